"""Deterministic random generators.

Everything drawn here is a pure function of ``(GenConfig, case index, salt)``:
each :class:`Gen` owns a ``random.Random`` seeded from a string, which
Python hashes with SHA-512, so runs are reproducible across processes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Optional

from ..calculus import Bounds
from ..context import Context, contexts_of, embed
from ..subst import Subst
from ..term import (
    BOTTOM, App, Bottom, Expr, Program, RewriteRule, Signature, Symbol, Var,
    cons, fun, size,
)

__all__ = [
    "GenConfig", "Gen", "gen_expr", "gen_program", "gen_subst", "gen_context",
    "signature_for",
]


@dataclass(frozen=True)
class GenConfig:
    seed: int = 42
    max_expr_size: int = 5
    max_rules: int = 3
    max_arity: int = 2
    constructor_count: int = 3
    function_count: int = 2
    var_count: int = 3
    allow_nonlinear: bool = False
    allow_bottom_in_expr: bool = False

    def __post_init__(self):
        for name in ("max_expr_size", "max_rules", "max_arity", "constructor_count",
                     "function_count", "var_count"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def with_(self, **changes) -> "GenConfig":
        return replace(self, **changes)


def signature_for(cfg: GenConfig) -> tuple[Signature, tuple[str, ...]]:
    """Symbols and variable names shared by every case of ``cfg``."""
    rng = random.Random(f"sig:{cfg.seed}:{cfg.constructor_count}:{cfg.function_count}:{cfg.max_arity}")
    symbols: list[Symbol] = []
    for k in range(cfg.constructor_count):
        if k == 0:
            arity = 0
        elif k == 1:
            arity = min(1, cfg.max_arity) if cfg.constructor_count == 2 else cfg.max_arity
        else:
            arity = rng.randint(0, cfg.max_arity)
        symbols.append(cons(f"c{k}", arity))
    for k in range(cfg.function_count):
        # f0 takes the widest argument tuple so repeated pattern variables can occur
        arity = cfg.max_arity if k == 0 else rng.randint(0, cfg.max_arity)
        symbols.append(fun(f"f{k}", arity))
    names = tuple(["X", "Y", "Z", "W"][:cfg.var_count]) + tuple(
        f"V{k}" for k in range(4, cfg.var_count)
    )
    return Signature(symbols), names


class Gen:
    """Random source for one property case."""

    def __init__(self, cfg: GenConfig, index: int, salt: str = ""):
        self.cfg = cfg
        self.index = index
        self.rng = random.Random(f"{cfg.seed}:{salt}:{index}")
        self.signature, self.var_names = signature_for(cfg)
        self.constructors = self.signature.constructors
        self.functions = self.signature.functions

    # -- primitives ---------------------------------------------------------

    def int(self, lo: int, hi: int) -> int:
        return self.rng.randint(lo, hi)

    def chance(self, p: float) -> bool:
        return self.rng.random() < p

    def choice(self, seq):
        return seq[self.rng.randrange(len(seq))]

    def _split(self, budget: int, parts: int) -> list[int]:
        """Random split of ``budget`` into ``parts`` positive sizes."""
        sizes = [1] * parts
        for _ in range(budget - parts):
            sizes[self.rng.randrange(parts)] += 1
        return sizes

    # -- expressions --------------------------------------------------------

    def expr(self, max_size: Optional[int] = None, *, cterm: bool = False,
             bottom: Optional[bool] = None, variables=None,
             functions: Optional[tuple[Symbol, ...]] = None) -> Expr:
        """Expression of at most ``max_size`` nodes.

        ``cterm`` restricts to constructors; ``bottom`` defaults to the
        config's ``allow_bottom_in_expr``.
        """
        max_size = self.cfg.max_expr_size if max_size is None else max_size
        bottom = self.cfg.allow_bottom_in_expr if bottom is None else bottom
        variables = self.var_names if variables is None else tuple(variables)
        symbols = list(self.constructors)
        if not cterm:
            symbols += list(self.functions if functions is None else functions)
        return self._expr(self.int(1, max_size), symbols, bottom, variables)

    def _expr(self, budget: int, symbols, bottom: bool, variables) -> Expr:
        compound = [s for s in symbols if 0 < s.arity < budget]
        if compound and self.chance(0.75):
            s = self.choice(compound)
            sizes = self._split(budget - 1, s.arity)
            return App(s, tuple(self._expr(n, symbols, bottom, variables) for n in sizes))
        leaves: list[Expr] = [App(s, ()) for s in symbols if s.arity == 0]
        leaves += [Var(v) for v in variables]
        if bottom or not leaves:
            leaves.append(BOTTOM)
        return self.choice(leaves)

    def cterm(self, max_size: Optional[int] = None, *, bottom: bool = True, variables=None) -> Expr:
        return self.expr(max_size, cterm=True, bottom=bottom, variables=variables)

    def prune(self, e: Expr, p: float = 0.3) -> Expr:
        """Random ``e2 ⊑ e``: each subterm replaced by bottom with probability ``p``."""
        if self.chance(p):
            return BOTTOM
        if isinstance(e, App):
            return App(e.symbol, tuple(self.prune(a, p) for a in e.args))
        return e

    def extend(self, e: Expr) -> Expr:
        """Random ``e2 ⊒ e``: bottoms replaced by fresh expressions."""
        if isinstance(e, Bottom):
            return BOTTOM if self.chance(0.3) else self.expr(3)
        if isinstance(e, App):
            return App(e.symbol, tuple(self.extend(a) for a in e.args))
        return e

    # -- programs -----------------------------------------------------------

    def program(self, *, wild: bool = False, min_rules: int = 0) -> Program:
        """Random program.

        Left-hand sides follow the constructor discipline and are linear
        unless ``allow_nonlinear``; right-hand sides only call functions that
        have a rule.  ``wild`` drops all restrictions, for exercising lint.
        """
        n = self.int(min(min_rules, self.cfg.max_rules), self.cfg.max_rules)
        if not self.functions or n == 0:
            return Program()
        heads = [self.choice(self.functions) for _ in range(n)]
        defined = tuple(dict.fromkeys(heads))
        rules = []
        for f in heads:
            if wild:
                rules.append(self._wild_rule(f))
                continue
            used: list[str] = []
            args = tuple(self._pattern(used) for _ in range(f.arity))
            lhs_vars = tuple(used)
            rhs_vars = lhs_vars
            if self.chance(0.2) or not rhs_vars:
                rhs_vars = lhs_vars + (self.choice(self.var_names),)
            rhs = self.expr(max(1, self.cfg.max_expr_size - 1), bottom=False,
                            variables=rhs_vars, functions=defined)
            rules.append(RewriteRule(App(f, args), rhs))
        return Program(tuple(rules))

    def call(self, p: Program, max_size: Optional[int] = None) -> Expr:
        """Expression of at most ``max_size`` nodes that usually calls a
        function defined in ``p``."""
        budget = self.cfg.max_expr_size if max_size is None else max_size
        defined = tuple(dict.fromkeys(r.lhs.symbol for r in p.rules if isinstance(r.lhs, App)))
        if not defined or self.chance(0.2):
            return self.expr(budget)
        f = self.choice([s for s in defined if s.arity < budget] or [self.functions[0]])
        if f.arity >= budget:
            return self.expr(budget)
        share = (budget - 1) // max(1, f.arity)
        e: Expr = App(f, tuple(self.expr(share, functions=defined) for _ in range(f.arity)))
        room = budget - size(e) - 1
        host = [s for s in self.constructors if 0 < s.arity <= room + 1]
        if host and self.chance(0.3):
            c = self.choice(host)
            i = self.int(0, c.arity - 1)
            rest = room // (c.arity - 1) if c.arity > 1 else 0
            e = App(c, tuple(e if j == i else self.expr(rest) for j in range(c.arity)))
        return e

    def _pattern(self, used: list[str]) -> Expr:
        budget = self.int(1, 3)
        compound = [s for s in self.constructors if 0 < s.arity < budget]
        if compound and self.chance(0.4):
            s = self.choice(compound)
            return App(s, tuple(self._pattern(used) for _ in range(s.arity)))
        if self.chance(0.7):
            if used and self.cfg.allow_nonlinear and self.chance(0.5):
                return Var(self.choice(used))
            fresh = [v for v in self.var_names if v not in used]
            name = self.choice(fresh) if fresh else f"P{len(used)}"
            used.append(name)
            return Var(name)
        nullary = [s for s in self.constructors if s.arity == 0]
        return App(self.choice(nullary), ())

    def _wild_rule(self, f: Symbol) -> RewriteRule:
        if self.chance(0.2):
            lhs = self.expr(3, bottom=True)
        else:
            lhs = App(f, tuple(self.expr(2, bottom=self.chance(0.2)) for _ in range(f.arity)))
        return RewriteRule(lhs, self.expr(3, bottom=self.chance(0.2)))

    # -- substitutions, contexts, bounds ------------------------------------

    def subst(self, *, csubst: bool = True, max_size: int = 3) -> Subst:
        names = [v for v in self.var_names if self.chance(0.5)]
        return Subst({
            v: self.expr(max_size, cterm=csubst, bottom=self.chance(0.5)) for v in names
        })

    def context(self, max_size: Optional[int] = None) -> Context:
        """A one-hole context: a random occurrence in a random expression."""
        e = self.expr(max_size)
        c, _ = self.choice(contexts_of(e))
        return c

    def zero_hole_context(self) -> Context:
        return embed(self.expr())

    def bounds(self, max_depth: int = 3, max_term_size: int = 2, min_depth: int = 1) -> Bounds:
        pool = tuple(v for v in self.var_names if self.chance(0.2))[:1]
        return Bounds(self.int(min_depth, max_depth), self.int(1, max_term_size), pool)

    def occurrence(self, e: Expr) -> tuple[Context, Expr]:
        return self.choice(contexts_of(e))


def gen_expr(cfg: GenConfig, i: int) -> Expr:
    return Gen(cfg, i, "expr").expr()


def gen_program(cfg: GenConfig, i: int) -> Program:
    return Gen(cfg, i, "program").program()


def gen_subst(cfg: GenConfig, i: int, csubst: bool = True) -> Subst:
    return Gen(cfg, i, "subst").subst(csubst=csubst)


def gen_context(cfg: GenConfig, i: int) -> Context:
    return Gen(cfg, i, "context").context()

