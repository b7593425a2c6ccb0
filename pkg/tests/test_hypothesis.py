"""Core laws again, with hypothesis drawing the terms instead of the built-in generator."""

import pytest

hyp = pytest.importorskip("hypothesis")
from hypothesis import given, settings, strategies as st  # noqa: E402

from crwl.calculus import Bounds, denotation  # noqa: E402
from crwl.harness.oracle import oracle_lower_set  # noqa: E402
from crwl.order import leq, lower_set  # noqa: E402
from crwl.subst import Subst, apply_subst, compose  # noqa: E402
from crwl.term import (  # noqa: E402
    BOTTOM, App, Program, Var, cons, fun, height, parse_expr, print_expr, signature_of,
)

SYMBOLS = [cons("a"), cons("b"), cons("s", 1), cons("p", 2), fun("f", 1), fun("g", 2)]
CONSTRUCTORS = [s for s in SYMBOLS if s.is_constructor]
leaves = st.sampled_from([BOTTOM, Var("X"), Var("Y"), App(SYMBOLS[0], ()), App(SYMBOLS[1], ())])


def _tree(symbols):
    compound = [s for s in symbols if s.arity]
    return st.recursive(
        leaves,
        lambda kids: st.sampled_from(compound).flatmap(
            lambda s: st.tuples(*[kids] * s.arity).map(lambda args: App(s, args))),
        max_leaves=6,
    )


exprs = _tree(SYMBOLS)
cterms = _tree(CONSTRUCTORS)
csubsts = st.dictionaries(st.sampled_from(["X", "Y", "Z"]), cterms, max_size=3).map(Subst)


@settings(max_examples=200, deadline=None)
@given(exprs)
def test_print_parse(e):
    assert parse_expr(print_expr(e), signature_of(e)) == e


@settings(max_examples=200, deadline=None)
@given(csubsts, csubsts, exprs)
def test_composition_law(theta, sigma, e):
    assert apply_subst(compose(theta, sigma), e) == apply_subst(theta, apply_subst(sigma, e))


@settings(max_examples=200, deadline=None)
@given(exprs, exprs)
def test_leq_is_membership_in_prunings(e, e2):
    assert leq(e, e2) == (e in oracle_lower_set(e2))


@settings(max_examples=100, deadline=None)
@given(cterms)
def test_cterm_denotation_is_lower_set(t):
    assert denotation(Program(), t, Bounds(height(t) + 1)) == lower_set(t)
