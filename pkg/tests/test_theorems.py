import pytest

from crwl.calculus import Bounds, Derivation, Rule, check_derivation, denotation, prove
from crwl.context import CApp, HOLE, parse_context
from crwl.subst import EMPTY, Subst
from crwl.term import BOTTOM, EMPTY_PROGRAM, Var, parse_expr, parse_program
from crwl.theorems import (
    PreconditionError, check_contextual_equivalence, join_context, polarity_transform,
    refl_derivation, split_context, subst_closure,
)

NONLINEAR = parse_program("f(X,X) -> a; coin -> heads; coin -> tails; data c/1;")
COIN = parse_program("coin -> heads; coin -> tails; data c/1;")


def E(text, p=NONLINEAR):
    return parse_expr(text, p.signature)


def valid(p, d):
    res = check_derivation(p, d)
    assert res.valid, str(res)
    return d


def test_refl():
    assert refl_derivation(EMPTY_PROGRAM, Var("X")).rule is Rule.RR
    assert refl_derivation(EMPTY_PROGRAM, BOTTOM).rule is Rule.B
    d = valid(EMPTY_PROGRAM, refl_derivation(EMPTY_PROGRAM, parse_expr("c(a,X)")))
    assert d.rule is Rule.DC and [k.rule for k in d.children] == [Rule.DC, Rule.RR]
    with pytest.raises(PreconditionError):
        refl_derivation(NONLINEAR, E("f(a,a)"))


def test_closure_of_rr():
    d = subst_closure(EMPTY_PROGRAM, Derivation.refl_var(Var("X")), Subst({"X": E("c(a)")}))
    valid(EMPTY_PROGRAM, d)
    assert d.rule is Rule.DC and (d.expr, d.value) == (E("c(a)"), E("c(a)"))


def test_closure_identity_keeps_statement():
    d = prove(NONLINEAR, E("f(a,b)"), E("a"), Bounds(3))
    out = valid(NONLINEAR, subst_closure(NONLINEAR, d, EMPTY))
    assert out.stmt == d.stmt and out.witness.subst == Subst({"X": BOTTOM})


def test_closure_composes_witness():
    p = parse_program("g(X) -> c(X);")
    d = prove(p, E("g(Y)", p), E("c(Y)", p), Bounds(3))
    out = valid(p, subst_closure(p, d, Subst({"Y": E("b", p)})))
    assert out.stmt.value == E("c(b)", p)
    assert out.witness.subst == Subst({"X": E("b", p), "Y": E("b", p)})


def test_closure_rejects_function_images():
    d = Derivation.refl_var(Var("X"))
    with pytest.raises(PreconditionError):
        subst_closure(NONLINEAR, d, Subst({"X": E("f(a,a)")}))


def test_polarity_prunes_value():
    d = prove(EMPTY_PROGRAM, E("c(a)"), E("c(a)"), Bounds(2))
    out = valid(EMPTY_PROGRAM, polarity_transform(EMPTY_PROGRAM, d, E("c(a)"), E("c(_|_)")))
    assert out.stmt.value == E("c(_|_)")


def test_polarity_of_bottom_leaf():
    d = Derivation.bottom(E("_|_"))
    out = polarity_transform(NONLINEAR, d, E("f(a,b)"), BOTTOM)
    assert out.rule is Rule.B and out.expr == E("f(a,b)")


def test_polarity_refines_argument():
    d = valid(NONLINEAR, prove(NONLINEAR, E("f(a,_|_)"), E("a"), Bounds(3)))
    out = valid(NONLINEAR, polarity_transform(NONLINEAR, d, E("f(a,b)"), E("a")))
    assert out.height <= d.height


def test_polarity_preconditions():
    d = prove(NONLINEAR, E("f(a,b)"), E("a"), Bounds(3))
    with pytest.raises(PreconditionError):
        polarity_transform(NONLINEAR, d, E("f(a,_|_)"), E("a"))
    with pytest.raises(PreconditionError):
        polarity_transform(NONLINEAR, d, E("f(a,b)"), E("b"))


def test_split_at_root_hole():
    d = prove(COIN, E("coin", COIN), E("heads", COIN), Bounds(2))
    s, d1, d2 = split_context(COIN, d, HOLE, E("coin", COIN))
    assert s == E("heads", COIN) and d1 == d
    assert d2 == refl_derivation(COIN, s)


def test_split_through_bottom():
    d = Derivation.bottom(E("c(coin)"))
    s, d1, d2 = split_context(NONLINEAR, d, parse_context("c([])", NONLINEAR.signature), E("coin"))
    assert s == BOTTOM and d1.rule is Rule.B and d2.rule is Rule.B


def test_split_below_or_node():
    d = prove(NONLINEAR, E("f(coin,b)"), E("a"), Bounds(3))
    c = parse_context("f([],b)", NONLINEAR.signature)
    s, d1, d2 = split_context(NONLINEAR, d, c, E("coin"))
    assert s == BOTTOM
    valid(NONLINEAR, d1)
    valid(NONLINEAR, d2)
    assert d2.stmt.expr == E("f(_|_,b)")
    back = valid(NONLINEAR, join_context(NONLINEAR, d2, d1, c, E("coin"), s))
    assert back.stmt == d.stmt


def test_join_at_hole_uses_polarity():
    d1 = prove(COIN, E("coin", COIN), E("heads", COIN), Bounds(2))
    d2 = refl_derivation(COIN, E("heads", COIN))
    out = valid(COIN, join_context(COIN, d2, d1, HOLE, E("coin", COIN), E("heads", COIN)))
    assert out.stmt == d1.stmt
    out = join_context(COIN, Derivation.bottom(E("heads", COIN)), d1, HOLE, E("coin", COIN),
                       E("heads", COIN))
    assert out.rule is Rule.B and out.expr == E("coin", COIN)


def test_join_under_constructor():
    heads = E("heads", COIN)
    d1 = prove(COIN, E("coin", COIN), heads, Bounds(2))
    d2 = refl_derivation(COIN, E("c(heads)", COIN))
    c = CApp(COIN.signature["c"], (HOLE,))
    out = valid(COIN, join_context(COIN, d2, d1, c, E("coin", COIN), heads))
    assert (out.expr, out.value) == (E("c(coin)", COIN), E("c(heads)", COIN))


def test_join_checks_statements():
    d1 = prove(COIN, E("coin", COIN), E("heads", COIN), Bounds(2))
    with pytest.raises(PreconditionError):
        join_context(COIN, d1, d1, HOLE, E("coin", COIN), E("tails", COIN))


def test_contextual_equivalence():
    report = check_contextual_equivalence(COIN, E("coin", COIN), E("heads", COIN), Bounds(3))
    assert not report.equal and report.consistent
    same = E("c(_|_)", COIN)
    contexts = [HOLE, parse_context("c([])", COIN.signature), parse_context("g([],coin)", COIN.signature)]
    report = check_contextual_equivalence(COIN, same, same, Bounds(3), contexts)
    assert report.equal and all(ok for _, ok in report.contexts)


def test_denotation_grows_into_contexts():
    # frozen from the oracle: coin gives heads and tails, heads only heads
    assert denotation(COIN, E("coin", COIN), Bounds(3)) == (BOTTOM, E("heads", COIN), E("tails", COIN))
    assert denotation(COIN, E("heads", COIN), Bounds(3)) == (BOTTOM, E("heads", COIN))
