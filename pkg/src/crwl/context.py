"""Expressions with holes.

A :class:`Context` may have any number of holes, including none; one-hole
contexts are singled out by :func:`one_hole` at the call sites that need it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Union

from .term import (
    BOTTOM, App, Bottom, Expr, Symbol, Var, _build, _parse_single,
)

__all__ = [
    "Hole", "CBottom", "CVar", "CApp", "Context", "HOLE", "NotApplicable",
    "fill", "num_holes", "one_hole", "no_hole", "one_hole_split", "contexts_of",
    "embed", "hole_path", "print_context", "parse_context",
]


@dataclass(frozen=True)
class Hole:
    pass


@dataclass(frozen=True)
class CBottom:
    pass


@dataclass(frozen=True)
class CVar:
    name: str


@dataclass(frozen=True)
class CApp:
    symbol: Symbol
    args: tuple = ()

    def __post_init__(self):
        args = tuple(self.args)
        if len(args) != self.symbol.arity:
            raise ValueError(
                f"{self.symbol.name} expects {self.symbol.arity} arguments, got {len(args)}"
            )
        object.__setattr__(self, "args", args)


Context = Union[Hole, CBottom, CVar, CApp]
HOLE = Hole()


class NotApplicable(ValueError):
    """Raised when a one-hole decomposition is requested of an unsuitable context."""


def fill(e: Expr, c: Context) -> Expr:
    """Put ``e`` in every hole of ``c``."""
    match c:
        case Hole():
            return e
        case CBottom():
            return BOTTOM
        case CVar(name):
            return Var(name)
        case CApp(symbol, args):
            return App(symbol, tuple(fill(e, a) for a in args))
    raise TypeError(f"not a context: {c!r}")


def num_holes(c: Context) -> int:
    if isinstance(c, Hole):
        return 1
    if isinstance(c, CApp):
        return sum(num_holes(a) for a in c.args)
    return 0


def one_hole(c: Context) -> bool:
    return num_holes(c) == 1


def no_hole(c: Context) -> bool:
    return num_holes(c) == 0


def one_hole_split(c: Context) -> tuple[tuple[Context, ...], Context, tuple[Context, ...]]:
    """Split ``CApp(h, cs)`` into (prefix, pivot, suffix) around its only hole."""
    if not isinstance(c, CApp) or not one_hole(c):
        raise NotApplicable(f"not a one-hole application context: {print_context(c)}")
    for i, a in enumerate(c.args):
        if num_holes(a):
            return c.args[:i], a, c.args[i + 1:]
    raise AssertionError("unreachable")


def hole_path(c: Context) -> tuple[int, ...]:
    """Argument positions leading from the root of ``c`` to its single hole."""
    path = []
    while not isinstance(c, Hole):
        prefix, c, _ = one_hole_split(c)
        path.append(len(prefix))
    return tuple(path)


def embed(e: Expr) -> Context:
    """The zero-hole context with the same shape as ``e``."""
    if isinstance(e, Bottom):
        return CBottom()
    if isinstance(e, Var):
        return CVar(e.name)
    return CApp(e.symbol, tuple(embed(a) for a in e.args))


def contexts_of(e: Expr) -> tuple[tuple[Context, Expr], ...]:
    """One ``(C, s)`` per subterm occurrence of ``e``, with ``fill(s, C) == e``.

    Occurrences are listed in pre-order, the root (``Hole``) first.
    """
    return tuple(_contexts(e))


def _contexts(e: Expr) -> Iterator[tuple[Context, Expr]]:
    yield HOLE, e
    if isinstance(e, App):
        embedded = [embed(a) for a in e.args]
        for i, a in enumerate(e.args):
            for inner, s in _contexts(a):
                kids = embedded[:i] + [inner] + embedded[i + 1:]
                yield CApp(e.symbol, tuple(kids)), s


def print_context(c: Context) -> str:
    match c:
        case Hole():
            return "[]"
        case CBottom():
            return "_|_"
        case CVar(name):
            return name
        case CApp(symbol, args) if not args:
            return symbol.name
        case CApp(symbol, args):
            return symbol.name + "(" + ",".join(print_context(a) for a in args) + ")"
    raise TypeError(f"not a context: {c!r}")


class _ContextBuilder:
    hole = HOLE
    bottom = CBottom()

    @staticmethod
    def var(name):
        return CVar(name)

    @staticmethod
    def app(symbol, args):
        return CApp(symbol, args)


def parse_context(text: str, signature: Optional[Mapping[str, Symbol]] = None) -> Context:
    """Parse the expression grammar extended with ``[]`` for a hole."""
    raw = _parse_single(text, allow_hole=True)
    return _build(raw, signature or {}, _ContextBuilder)

