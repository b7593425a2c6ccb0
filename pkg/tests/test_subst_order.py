from crwl.harness.oracle import oracle_lower_set
from crwl.order import leq, lower_set, lt_strict
from crwl.subst import EMPTY, Subst, apply_subst, compose, domain, is_csubst
from crwl.term import BOTTOM, App, Var, cons, fun, parse_expr

a, b = App(cons("a"), ()), App(cons("b"), ())
c1, c2 = cons("c", 1), cons("c", 2)
f1, f2 = fun("f", 1), fun("f", 2)
X, Y = Var("X"), Var("Y")


def test_apply():
    assert apply_subst(Subst({"X": a}), App(f2, (X, Y))) == App(f2, (a, Y))
    e = App(f2, (X, App(c1, (Y,))))
    assert apply_subst(EMPTY, e) == e
    assert apply_subst(Subst({"X": BOTTOM}), App(c2, (X, X))) == App(c2, (BOTTOM, BOTTOM))


def test_compose():
    pair = cons("pair", 2)
    theta, sigma = Subst({"Y": b}), Subst({"X": App(c1, (Y,))})
    comp = compose(theta, sigma)
    assert comp == Subst({"X": App(c1, (b,)), "Y": b})
    e = App(pair, (X, Y))
    assert apply_subst(comp, e) == apply_subst(theta, apply_subst(sigma, e))
    assert compose(EMPTY, sigma) == sigma


def test_identity_bindings_dropped():
    s = compose(Subst({"X": Y}), Subst({"Y": X}))
    assert "Y" not in s and s == Subst({"X": Y})
    assert Subst({"X": X}) == EMPTY


def test_csubst():
    assert is_csubst(Subst({"X": BOTTOM}))
    assert is_csubst(Subst({"X": App(c1, (Y,))}))
    assert not is_csubst(Subst({"X": App(f1, (a,))}))


def test_domain():
    assert domain(EMPTY) == frozenset()
    assert domain(Subst({"X": a})) == {"X"}
    assert domain(Subst({"X": a, "Y": BOTTOM})) == {"X", "Y"}


def test_leq():
    assert leq(BOTTOM, App(f1, (a,)))
    assert leq(App(c2, (BOTTOM, a)), App(c2, (b, a)))
    assert not leq(X, Y)
    assert not leq(a, BOTTOM)


def test_lt_strict():
    assert not lt_strict(BOTTOM, BOTTOM)
    assert lt_strict(BOTTOM, a)
    assert not lt_strict(App(c1, (a,)), App(c1, (a,)))


def test_lower_set():
    assert lower_set(a) == (BOTTOM, a)
    assert lower_set(App(c1, (a,))) == (BOTTOM, App(c1, (BOTTOM,)), App(c1, (a,)))
    assert lower_set(X) == (BOTTOM, X)


def test_lower_set_matches_pruning_oracle():
    for text in ["c(a,X)", "f(c(a),_|_)", "g(c(a), c(b))", "d"]:
        e = parse_expr(text)
        assert list(lower_set(e)) == oracle_lower_set(e)
        # frozen from the oracle
    assert len(lower_set(parse_expr("g(c(a), c(b))"))) == 10
