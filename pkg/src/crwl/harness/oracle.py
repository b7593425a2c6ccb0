"""Brute-force reference implementations used to cross-check the engine.

Nothing here calls into :mod:`crwl.calculus`, :mod:`crwl.subst` or
:mod:`crwl.order`.  The denotation oracle does not match patterns: it guesses
every substitution from a finite candidate pool and tests each premise by
set membership, one derivation height at a time.
"""

from __future__ import annotations

from itertools import product

from ..term import BOTTOM, App, Bottom, Expr, Program, Var, expr_key, subterms

__all__ = [
    "oracle_denotation", "oracle_universe", "oracle_lower_set", "crwl_program_ok",
    "oracle_leq",
]


def _inst(env: dict[str, Expr], e: Expr) -> Expr:
    if isinstance(e, Var):
        return env.get(e.name, e)
    if isinstance(e, App):
        return App(e.symbol, tuple(_inst(env, a) for a in e.args))
    return e


def _var_names(e: Expr) -> list[str]:
    return sorted({n.name for n in subterms(e) if isinstance(n, Var)})


def _node_count(e: Expr) -> int:
    return sum(1 for _ in subterms(e))


def oracle_universe(p: Program, term_size: int, var_pool=()) -> list[Expr]:
    """Partial c-terms up to ``term_size`` nodes, grown by repeated saturation."""
    terms: set[Expr] = {BOTTOM, *(Var(v) for v in var_pool)}
    constructors = [s for s in p.signature.values() if s.is_constructor]
    while True:
        fresh = set()
        for c in constructors:
            for args in product(sorted(terms, key=expr_key), repeat=c.arity):
                t = App(c, args)
                if _node_count(t) <= term_size and t not in terms:
                    fresh.add(t)
        if not fresh:
            return sorted(terms, key=expr_key)
        terms |= fresh


def oracle_denotation(p: Program, e: Expr, depth: int, term_size: int = 1,
                      var_pool=()) -> list[Expr]:
    """Every root value of a derivation of height at most ``depth``.

    Intended for tiny instances only; the substitution search is a plain
    Cartesian product.
    """
    universe = oracle_universe(p, term_size, var_pool)
    levels: list[dict[Expr, frozenset]] = [{} for _ in range(depth + 1)]

    def values(x: Expr, h: int) -> frozenset:
        if h <= 0:
            return frozenset()
        table = levels[h]
        if x in table:
            return table[x]
        found: set[Expr] = {BOTTOM}                                  # B
        if isinstance(x, Var):
            found.add(x)                                              # RR
        elif isinstance(x, App) and x.symbol.is_constructor:
            below = [values(a, h - 1) for a in x.args]                # DC
            found.update(App(x.symbol, ts) for ts in product(*below))
        elif isinstance(x, App):
            found |= _outer(x, h)                                     # OR
        table[x] = frozenset(found)
        return table[x]

    def _outer(x: App, h: int) -> set[Expr]:
        out: set[Expr] = set()
        arg_values = [values(a, h - 1) for a in x.args]
        for rule in p.rules:
            lhs = rule.lhs
            if not (isinstance(lhs, App) and lhs.symbol == x.symbol):
                continue
            lhs_vars = _var_names(lhs)
            extras = [v for v in _var_names(rule.rhs) if v not in lhs_vars]
            pools = []
            for v in lhs_vars:
                # θ(v) must be a subterm of a value of every argument mentioning v
                cands = None
                for pat, vals in zip(lhs.args, arg_values):
                    if v in _var_names(pat):
                        subs = {s for t in vals for s in subterms(t)}
                        cands = subs if cands is None else cands & subs
                pools.append(sorted(cands or (), key=expr_key))
            for guess in product(*pools):
                env = dict(zip(lhs_vars, guess))
                if not all(_inst(env, pat) in vals for pat, vals in zip(lhs.args, arg_values)):
                    continue
                for extra in product(universe, repeat=len(extras)):
                    full = dict(env)
                    full.update(zip(extras, extra))
                    out |= values(_inst(full, rule.rhs), h - 1)
        return out

    return sorted(values(e, depth), key=expr_key)


def oracle_leq(a: Expr, b: Expr) -> bool:
    """``a ⊑ b`` via pruning: ``a`` is ``b`` with some subtrees cut to bottom."""
    return a in oracle_lower_set(b)


def oracle_lower_set(e: Expr) -> list[Expr]:
    """All prunings of ``e``, by enumerating every subset of cut positions."""
    positions = _positions(e)
    out = set()
    for mask in range(1 << len(positions)):
        cut = [positions[i] for i in range(len(positions)) if mask >> i & 1]
        out.add(_cut(e, cut))
    return sorted(out, key=expr_key)


def _positions(e: Expr, prefix=()) -> list[tuple[int, ...]]:
    out = [prefix]
    if isinstance(e, App):
        for i, a in enumerate(e.args):
            out += _positions(a, prefix + (i,))
    return out


def _cut(e: Expr, cut: list[tuple[int, ...]], here=()) -> Expr:
    if here in cut:
        return BOTTOM
    if isinstance(e, App):
        return App(e.symbol, tuple(_cut(a, cut, here + (i,)) for i, a in enumerate(e.args)))
    return e


def crwl_program_ok(p: Program) -> bool:
    """Constructor discipline, left-linearity, no bottom, consistent symbols."""
    for rule in p.rules:
        nodes = list(subterms(rule.lhs)) + list(subterms(rule.rhs))
        if any(isinstance(n, Bottom) for n in nodes):
            return False
        for n in nodes:
            if isinstance(n, App) and p.signature.get(n.symbol.name) != n.symbol:
                return False
        lhs = rule.lhs
        if not isinstance(lhs, App) or not lhs.symbol.is_function:
            return False
        seen = []
        for arg in lhs.args:
            for n in subterms(arg):
                if isinstance(n, App) and not n.symbol.is_constructor:
                    return False
                if isinstance(n, Var):
                    if n.name in seen:
                        return False
                    seen.append(n.name)
    return True
