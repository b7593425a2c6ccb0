"""Finite substitutions over partial expressions."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Union

from .term import App, Expr, Var, is_partial_cterm, print_expr

__all__ = ["Subst", "EMPTY", "apply_subst", "compose", "is_csubst", "domain"]


class Subst(Mapping[str, Expr]):
    """Immutable map from variable names to expressions.

    Identity bindings ``X -> X`` are dropped on construction, so the key set
    is exactly the domain and structural equality is extensional equality.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, bindings: Union[Mapping[str, Expr], Iterable[tuple[str, Expr]]] = ()):
        items = bindings.items() if isinstance(bindings, Mapping) else bindings
        table = {}
        for name, e in items:
            if isinstance(name, Var):
                name = name.name
            if isinstance(e, Var) and e.name == name:
                continue
            table[name] = e
        self._map = dict(sorted(table.items()))
        self._hash = None

    def __getitem__(self, name: str) -> Expr:
        return self._map[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other):
        if isinstance(other, Subst):
            return self._map == other._map
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._map.items()))
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{k}↦{print_expr(v)}" for k, v in self._map.items())
        return "{" + inner + "}"

    def __call__(self, e: Expr) -> Expr:
        return apply_subst(self, e)


EMPTY = Subst()


def apply_subst(theta: Mapping[str, Expr], e: Expr) -> Expr:
    if not theta:
        return e
    if isinstance(e, Var):
        return theta.get(e.name, e)
    if isinstance(e, App):
        if not e.args:
            return e
        return App(e.symbol, tuple(apply_subst(theta, a) for a in e.args))
    return e


def compose(theta: Subst, sigma: Subst) -> Subst:
    """Substitution that applies ``sigma`` first, then ``theta``."""
    out = {x: apply_subst(theta, t) for x, t in sigma.items()}
    for x, t in theta.items():
        out.setdefault(x, t)
    return Subst(out)


def is_csubst(theta: Mapping[str, Expr]) -> bool:
    return all(is_partial_cterm(t) for t in theta.values())


def domain(theta: Subst) -> frozenset[str]:
    return frozenset(theta)
