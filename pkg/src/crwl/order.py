"""The approximation ordering on partial expressions."""

from __future__ import annotations

from itertools import product

from .term import BOTTOM, App, Bottom, Expr, Var, sort_exprs

__all__ = ["leq", "lt_strict", "lower_set"]


def leq(e: Expr, e2: Expr) -> bool:
    """``e ⊑ e2``: ``e`` is ``e2`` with some subterms pruned to bottom."""
    if isinstance(e, Bottom):
        return True
    if isinstance(e, Var):
        return e == e2
    if not isinstance(e2, App) or e.symbol != e2.symbol:
        return False
    return all(leq(a, b) for a, b in zip(e.args, e2.args))


def lt_strict(e: Expr, e2: Expr) -> bool:
    return e != e2 and leq(e, e2)


def _lower(e: Expr) -> set[Expr]:
    if isinstance(e, Bottom):
        return {BOTTOM}
    if isinstance(e, Var):
        return {BOTTOM, e}
    out = {BOTTOM}
    for args in product(*(_lower(a) for a in e.args)):
        out.add(App(e.symbol, args))
    return out


def lower_set(e: Expr) -> tuple[Expr, ...]:
    """Every ``e2`` with ``e2 ⊑ e``, sorted by ``expr_order``."""
    return sort_exprs(_lower(e))

