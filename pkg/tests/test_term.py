import pytest

from crwl.term import (
    BOTTOM, App, LintKind, ParseError, Program, RewriteRule, SymbolKind, Var, cons,
    expr_order, fun, is_linear, is_partial_cterm, is_total, lint_program, parse_expr,
    parse_program, print_expr, print_program, signature_of, sort_exprs, vars,
)

a, b = App(cons("a"), ()), App(cons("b"), ())
c1, c2 = cons("c", 1), cons("c", 2)
X, Y = Var("X"), Var("Y")


def test_parse_nonlinear_program():
    p = parse_program("f(X,X) -> a;")
    assert len(p.rules) == 1
    assert p.signature["f"].kind is SymbolKind.FUNCTION and p.signature["f"].arity == 2
    assert p.signature["a"].kind is SymbolKind.CONSTRUCTOR and p.signature["a"].arity == 0


def test_parse_empty_program():
    p = parse_program("")
    assert p.rules == () and len(p.signature) == 0


def test_extra_variable_kept():
    (rule,) = parse_program("g(X) -> pair(X,Y);").rules
    assert vars(rule.rhs) - vars(rule.lhs) == {"Y"}


def test_comments_and_data_declarations():
    p = parse_program("-- a comment\ndata nil/0; data cons/2;\nlen(nil) -> z;\n")
    assert p.signature["cons"] == cons("cons", 2)
    assert p.signature["len"].kind is SymbolKind.FUNCTION


@pytest.mark.parametrize("text", ["f(X -> a;", "f(X) -> ;", "f(_|_) -> a;", "f(X) -> a"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_program(text)


def test_arity_conflict_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_program("f(X) -> c(X); g -> c(a,a);")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_program("f(X) -> a;\n  g(Y) -> ?;")
    assert (info.value.line, info.value.column) == (2, 11)


def test_partial_cterm():
    assert is_partial_cterm(BOTTOM)
    assert is_partial_cterm(App(c2, (X, BOTTOM)))
    assert not is_partial_cterm(App(fun("f", 1), (a,)))


def test_total():
    assert is_total(App(c1, (a,)))
    assert not is_total(App(c1, (BOTTOM,)))
    assert is_total(X)


def test_vars():
    f2 = fun("f", 2)
    assert vars(X) == {"X"}
    assert vars(App(c2, (X, App(f2, (X, Y))))) == {"X", "Y"}
    assert vars(BOTTOM) == frozenset()


def test_linearity():
    assert is_linear([X, Y])
    assert not is_linear([X, X])
    assert not is_linear([App(c2, (X, X))])


def test_lint_nonlinear():
    report = lint_program(parse_program("f(X,X) -> a;"))
    assert report.kinds == [LintKind.NON_LINEAR_LHS]
    assert report.diagnostics[0].rule_index == 0


def test_lint_self_recursion_is_fine():
    assert not lint_program(parse_program("f(X) -> f(X);"))


def test_lint_function_in_pattern():
    report = lint_program(parse_program("f(g(X)) -> a; g(X) -> X;"))
    assert report.kinds == [LintKind.ARG_NOT_CTERM]
    assert report.diagnostics[0].rule_index == 0


def test_lint_flags_hand_built_rules():
    f1 = fun("f", 1)
    p = Program((
        RewriteRule(App(c1, (X,)), a),
        RewriteRule(App(f1, (X,)), BOTTOM),
        RewriteRule(App(f1, (a,)), App(cons("f", 1), (a,))),
    ))
    kinds = lint_program(p).kinds
    assert LintKind.NOT_FUNCTION_ROOT in kinds
    assert LintKind.BOTTOM_IN_RULE in kinds
    assert LintKind.ARITY_MISMATCH in kinds


def test_print():
    assert print_expr(App(c2, (X, BOTTOM))) == "c(X,_|_)"
    assert print_expr(X) == "X"
    assert print_expr(a) == "a"


def test_program_roundtrip_keeps_data_declarations():
    p = parse_program("data zero/0; f(X) -> X;")
    q = parse_program(print_program(p))
    assert q.rules == p.rules and dict(q.signature) == dict(p.signature)


def test_expr_order():
    assert expr_order(BOTTOM, X) < 0
    assert expr_order(X, X) == 0
    assert expr_order(App(c1, (a,)), App(c1, (b,))) < 0
    assert sort_exprs([b, a, BOTTOM, a]) == (BOTTOM, a, b)


def test_parse_expr_uses_signature():
    p = parse_program("f(X) -> X;")
    e = parse_expr("f(g(_|_))", p.signature)
    assert e.symbol.kind is SymbolKind.FUNCTION
    assert e.args[0].symbol.kind is SymbolKind.CONSTRUCTOR
    assert signature_of(e)["g"] == cons("g", 1)


def test_arity_checked_on_construction():
    with pytest.raises(ValueError):
        App(c2, (a,))
