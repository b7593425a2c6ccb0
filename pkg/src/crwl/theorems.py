"""Metatheorems of the calculus as derivation-to-derivation transformers.

Each transformer builds a new derivation from a given one by recursion on
its structure.  Results are plain :class:`~crwl.calculus.Derivation` values
and are meant to be re-validated with :func:`~crwl.calculus.check_derivation`.

Preconditions are checked up front (``validate=False`` skips the costly
full re-check of input derivations) and reported as :class:`PreconditionError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .calculus import (
    Bounds, Derivation, Rule, Statement, check_derivation, Evaluator,
)
from .context import HOLE, Context, Hole, fill, one_hole, one_hole_split, print_context
from .order import leq
from .subst import Subst, apply_subst, compose, is_csubst
from .term import BOTTOM, App, Bottom, Expr, Program, Var, is_partial_cterm, print_expr

__all__ = [
    "PreconditionError", "refl_derivation", "subst_closure", "polarity_transform",
    "split_context", "join_context", "check_contextual_equivalence", "EquivalenceReport",
]


class PreconditionError(ValueError):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise PreconditionError(msg)


def _require_valid(p: Program, d: Derivation, what: str = "input derivation"):
    result = check_derivation(p, d)
    if not result.valid:
        raise PreconditionError(f"{what} is not valid:\n{result}")


def refl_derivation(p: Program, t: Expr) -> Derivation:
    """``t ⊳ t`` for a partial c-term, using B, RR and DC only."""
    _require(is_partial_cterm(t), f"{print_expr(t)} is not a partial c-term")
    return _refl(t)


def _refl(t: Expr) -> Derivation:
    if isinstance(t, Bottom):
        return Derivation.bottom(t)
    if isinstance(t, Var):
        return Derivation.refl_var(t)
    return Derivation.decompose(t, t, [_refl(a) for a in t.args])


# ---------------------------------------------------------------------------
# Closedness under c-substitutions
# ---------------------------------------------------------------------------

def subst_closure(p: Program, d: Derivation, theta: Subst, *, validate: bool = True) -> Derivation:
    """From ``e ⊳ t`` build ``eθ ⊳ tθ``.

    Variables proved by RR become reflexivity proofs of their image; OR
    nodes keep their rule and compose θ onto their witness.
    """
    _require(is_csubst(theta), f"{theta!r} is not a c-substitution")
    if validate:
        _require_valid(p, d)
    return _close(d, theta)


def _close(d: Derivation, theta: Subst) -> Derivation:
    e, t = apply_subst(theta, d.expr), apply_subst(theta, d.value)
    if d.rule is Rule.B:
        return Derivation.bottom(e)
    if d.rule is Rule.RR:
        return _refl(e)
    kids = [_close(c, theta) for c in d.children]
    if d.rule is Rule.DC:
        return Derivation.decompose(e, t, kids)
    w = d.witness
    return Derivation.outer(e, t, w.rule_index, compose(theta, w.subst), kids)


# ---------------------------------------------------------------------------
# Polarity
# ---------------------------------------------------------------------------

def polarity_transform(p: Program, d: Derivation, e2: Expr, t2: Expr, *,
                       validate: bool = True) -> Derivation:
    """From ``e ⊳ t`` with ``e ⊑ e2`` and ``t2 ⊑ t`` build ``e2 ⊳ t2``.

    The result is never taller than ``d``.
    """
    _require(leq(d.expr, e2), f"{print_expr(d.expr)} ⋢ {print_expr(e2)}")
    _require(leq(t2, d.value), f"{print_expr(t2)} ⋢ {print_expr(d.value)}")
    _require(is_partial_cterm(t2), f"{print_expr(t2)} is not a partial c-term")
    if validate:
        _require_valid(p, d)
    return _polar(d, e2, t2)


def _polar(d: Derivation, e2: Expr, t2: Expr) -> Derivation:
    # a ⊥ target is always B, whatever d ended with (this covers d = B, where t2 ⊑ ⊥)
    if isinstance(t2, Bottom):
        return Derivation.bottom(e2)
    if d.rule is Rule.RR:
        # Var v ⊑ e2 forces e2 = Var v, and t2 is then Var v
        return Derivation.refl_var(e2)
    if d.rule is Rule.DC:
        kids = [_polar(c, a, v) for c, a, v in zip(d.children, e2.args, t2.args)]
        return Derivation.decompose(e2, t2, kids)
    # OR: argument premises keep their targets, the rhs premise gets t2
    *args, rhs = d.children
    kids = [_polar(c, a, c.value) for c, a in zip(args, e2.args)]
    kids.append(_polar(rhs, rhs.expr, t2))
    w = d.witness
    return Derivation.outer(e2, t2, w.rule_index, w.subst, kids)


# ---------------------------------------------------------------------------
# Compositionality
# ---------------------------------------------------------------------------

def split_context(p: Program, d: Derivation, c: Context, e: Expr, *,
                  validate: bool = True) -> tuple[Expr, Derivation, Derivation]:
    """From ``C[e] ⊳ t`` obtain ``s`` with ``e ⊳ s`` and ``C[s] ⊳ t``.

    Returns ``(s, d1, d2)`` where ``d1`` proves ``e ⊳ s`` and ``d2`` proves
    ``C[s] ⊳ t``.
    """
    _require(one_hole(c), f"{print_context(c)} does not have exactly one hole")
    _require(fill(e, c) == d.expr,
             f"{print_context(c)} filled with {print_expr(e)} is not {print_expr(d.expr)}")
    if validate:
        _require_valid(p, d)
    return _split(d, c, e)


def _split(d: Derivation, c: Context, e: Expr) -> tuple[Expr, Derivation, Derivation]:
    if isinstance(c, Hole):
        s = d.value
        return s, d, _refl(s)
    if d.rule is Rule.B:
        return BOTTOM, Derivation.bottom(e), Derivation.bottom(fill(BOTTOM, c))
    if d.rule not in (Rule.DC, Rule.OR):
        raise AssertionError(f"{d.rule.value} node above a hole in {print_context(c)}")
    prefix, pivot, _ = one_hole_split(c)
    i = len(prefix)
    s, d1, sub = _split(d.children[i], pivot, e)
    # the other premises prove hole-free arguments, unchanged by the new filler
    kids = list(d.children)
    kids[i] = sub
    return s, d1, Derivation(Statement(fill(s, c), d.value), d.rule, d.witness, tuple(kids))


def join_context(p: Program, d2: Derivation, d1: Derivation, c: Context, e: Expr, s: Expr, *,
                 validate: bool = True) -> Derivation:
    """From ``e ⊳ s`` (``d1``) and ``C[s] ⊳ t`` (``d2``) build ``C[e] ⊳ t``."""
    _require(one_hole(c), f"{print_context(c)} does not have exactly one hole")
    _require(d1.stmt == Statement(e, s), f"d1 proves {d1.stmt}, expected "
             f"{print_expr(e)} ⊳ {print_expr(s)}")
    _require(d2.expr == fill(s, c), f"d2 proves {d2.stmt}, expected left side "
             f"{print_expr(fill(s, c))}")
    if validate:
        _require_valid(p, d1, "d1")
        _require_valid(p, d2, "d2")
    return _join(d2, d1, c, e)


def _join(d2: Derivation, d1: Derivation, c: Context, e: Expr) -> Derivation:
    if isinstance(c, Hole):
        # d2 proves s ⊳ t with s a c-term, so t ⊑ s and polarity applies to d1
        return _polar(d1, d1.expr, d2.value)
    if d2.rule is Rule.B:
        return Derivation.bottom(fill(e, c))
    if d2.rule not in (Rule.DC, Rule.OR):
        raise AssertionError(f"{d2.rule.value} node above a hole in {print_context(c)}")
    prefix, pivot, _ = one_hole_split(c)
    i = len(prefix)
    kids = list(d2.children)
    kids[i] = _join(kids[i], d1, pivot, e)
    return Derivation(Statement(fill(e, c), d2.value), d2.rule, d2.witness, tuple(kids))


# ---------------------------------------------------------------------------
# Contextual equivalence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceReport:
    equal: bool
    contexts: tuple[tuple[Context, bool], ...]

    @property
    def consistent(self) -> bool:
        """Equal denotations imply equality under every context."""
        return not self.equal or all(ok for _, ok in self.contexts)

    def __str__(self):
        lines = [f"denotations {'equal' if self.equal else 'differ'}"]
        lines += [f"  {print_context(c)}: {'equal' if ok else 'differ'}" for c, ok in self.contexts]
        return "\n".join(lines)


def check_contextual_equivalence(p: Program, e1: Expr, e2: Expr, b: Bounds,
                                 contexts: Iterable[Context] = (HOLE,)) -> EquivalenceReport:
    """Compare bounded denotations of ``e1`` and ``e2``, bare and under each context."""
    contexts = tuple(contexts)
    for c in contexts:
        _require(one_hole(c), f"{print_context(c)} does not have exactly one hole")
    ev = Evaluator(p, b)
    per = tuple(
        (c, ev.den(fill(e1, c), b.depth) == ev.den(fill(e2, c), b.depth)) for c in contexts
    )
    return EquivalenceReport(ev.den(e1, b.depth) == ev.den(e2, b.depth), per)
