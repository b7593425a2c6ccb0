"""Derivations of reduction statements ``e ⊳ t``, their checker, and bounded search.

The four rules are

* ``B``  -- ``e ⊳ ⊥`` for any ``e``;
* ``RR`` -- ``X ⊳ X`` for a variable ``X``;
* ``DC`` -- ``c(e1..en) ⊳ c(t1..tn)`` from ``ei ⊳ ti``, ``c`` a constructor;
* ``OR`` -- ``f(e1..en) ⊳ t`` from ``ei ⊳ piθ`` and ``rθ ⊳ t`` for a program
  rule ``f(p1..pn) -> r`` and a substitution θ into partial c-terms.

:func:`denotation` and :func:`prove` explore the same space, cut off by
:class:`Bounds`: derivation height, and the finite pool of c-terms that
extra variables of a rule may be instantiated with.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional, Sequence

from .subst import Subst, apply_subst, is_csubst
from .term import (
    BOTTOM, App, Bottom, Expr, Program, Var, expr_key, is_partial_cterm,
    print_expr, sort_exprs, vars,
)

__all__ = [
    "Rule", "Statement", "Witness", "Derivation", "Violation", "CheckResult",
    "Bounds", "NotFoundWithinBounds", "check_derivation", "denotation", "prove",
    "cterm_universe", "match_pattern", "Evaluator",
]


class Rule(enum.Enum):
    B = "B"
    RR = "RR"
    DC = "DC"
    OR = "OR"


@dataclass(frozen=True)
class Statement:
    expr: Expr
    value: Expr

    def __str__(self):
        return f"{print_expr(self.expr)} ⊳ {print_expr(self.value)}"


@dataclass(frozen=True)
class Witness:
    rule_index: int
    subst: Subst


@dataclass(frozen=True)
class Derivation:
    stmt: Statement
    rule: Rule
    witness: Optional[Witness] = None
    children: tuple["Derivation", ...] = ()
    _height: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        h = 1 + max((c.height for c in self.children), default=0)
        object.__setattr__(self, "_height", h)

    @property
    def expr(self) -> Expr:
        return self.stmt.expr

    @property
    def value(self) -> Expr:
        return self.stmt.value

    @property
    def height(self) -> int:
        return self._height

    def with_expr(self, expr: Expr) -> "Derivation":
        return Derivation(Statement(expr, self.value), self.rule, self.witness, self.children)

    def pretty(self, indent: int = 0) -> str:
        tag = self.rule.value
        if self.witness is not None:
            tag += f" #{self.witness.rule_index} {self.witness.subst!r}"
        lines = ["  " * indent + f"{self.stmt}   [{tag}]"]
        lines.extend(c.pretty(indent + 1) for c in self.children)
        return "\n".join(lines)

    # Leaf and node builders.

    @classmethod
    def bottom(cls, expr: Expr) -> "Derivation":
        return cls(Statement(expr, BOTTOM), Rule.B)

    @classmethod
    def refl_var(cls, v: Var) -> "Derivation":
        return cls(Statement(v, v), Rule.RR)

    @classmethod
    def decompose(cls, expr: App, value: App, children: Sequence["Derivation"]) -> "Derivation":
        return cls(Statement(expr, value), Rule.DC, None, tuple(children))

    @classmethod
    def outer(cls, expr: App, value: Expr, rule_index: int, theta: Subst,
              children: Sequence["Derivation"]) -> "Derivation":
        return cls(Statement(expr, value), Rule.OR, Witness(rule_index, theta), tuple(children))


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    path: tuple[int, ...]
    rule: str
    message: str

    def __str__(self):
        return f"at {list(self.path)} [{self.rule}]: {self.message}"


@dataclass(frozen=True)
class CheckResult:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def check_derivation(p: Program, d: Derivation) -> CheckResult:
    """Check every node of ``d`` against its rule; collect all violations."""
    out: list[Violation] = []
    _check(p, d, (), out)
    return CheckResult(tuple(out))


def _check(p: Program, d: Derivation, path: tuple[int, ...], out: list[Violation]):
    rule, e, t = d.rule, d.expr, d.value
    tag = rule.value if isinstance(rule, Rule) else str(rule)

    def bad(msg):
        out.append(Violation(path, tag, msg))

    def expect_child(i: int, expr: Expr, value: Expr):
        got = d.children[i].stmt
        if got.expr != expr or got.value != value:
            bad(f"premise {i} proves {got}, expected "
                f"{print_expr(expr)} ⊳ {print_expr(value)}")

    if not is_partial_cterm(t):
        bad(f"value {print_expr(t)} is not a partial c-term")
    if rule is not Rule.OR and d.witness is not None:
        bad("only OR nodes carry a rule witness")

    if rule is Rule.B:
        if t != BOTTOM:
            bad(f"B concludes {print_expr(t)}, must be _|_")
        if d.children:
            bad("B has no premises")
    elif rule is Rule.RR:
        if not isinstance(e, Var) or e != t:
            bad(f"RR needs X ⊳ X, got {d.stmt}")
        if d.children:
            bad("RR has no premises")
    elif rule is Rule.DC:
        if not (isinstance(e, App) and e.symbol.is_constructor):
            bad(f"DC needs a constructor application, got {print_expr(e)}")
        elif not (isinstance(t, App) and t.symbol == e.symbol):
            bad(f"DC value {print_expr(t)} does not have root {e.symbol.name}")
        elif len(d.children) != len(e.args):
            bad(f"DC needs {len(e.args)} premises, has {len(d.children)}")
        else:
            for i, (ei, ti) in enumerate(zip(e.args, t.args)):
                expect_child(i, ei, ti)
    elif rule is Rule.OR:
        _check_or(p, d, bad, expect_child)
    else:
        bad(f"unknown rule {rule!r}")

    for i, c in enumerate(d.children):
        _check(p, c, path + (i,), out)


def _check_or(p, d, bad, expect_child):
    e = d.expr
    w = d.witness
    if not (isinstance(e, App) and e.symbol.is_function):
        bad(f"OR needs a function call, got {print_expr(e)}")
        return
    if w is None:
        bad("OR node lacks a rule witness")
        return
    if not (0 <= w.rule_index < len(p.rules)):
        bad(f"rule index {w.rule_index} out of range (program has {len(p.rules)} rules)")
        return
    rule = p.rules[w.rule_index]
    lhs = rule.lhs
    if not (isinstance(lhs, App) and lhs.symbol == e.symbol):
        bad(f"rule {w.rule_index} ({rule}) does not define {e.symbol}")
        return
    theta = w.subst
    if not is_csubst(theta):
        bad(f"witness {theta!r} is not a c-substitution")
    n = len(e.args)
    if len(d.children) != n + 1:
        bad(f"OR needs {n + 1} premises, has {len(d.children)}")
        return
    for i, (ei, pi) in enumerate(zip(e.args, lhs.args)):
        expect_child(i, ei, apply_subst(theta, pi))
    expect_child(n, apply_subst(theta, rule.rhs), d.value)


# ---------------------------------------------------------------------------
# Bounded enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    """Cut-offs for enumeration.

    ``depth`` bounds derivation height (leaves have height 1); extra
    variables range over partial c-terms with at most ``term_size`` nodes
    built from the program's constructors and the variables in ``var_pool``.
    """

    depth: int
    term_size: int = 1
    var_pool: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "var_pool", tuple(self.var_pool))
        if self.depth < 0:
            raise ValueError("depth must be non-negative")
        if self.term_size < 1:
            raise ValueError("term_size must be positive")
        if len(set(self.var_pool)) != len(self.var_pool):
            raise ValueError("var_pool has duplicates")

    def __str__(self):
        return f"depth={self.depth} term_size={self.term_size} vars=[{','.join(self.var_pool)}]"


class NotFoundWithinBounds(LookupError):
    pass


def cterm_universe(p: Program, b: Bounds) -> tuple[Expr, ...]:
    """All partial c-terms of at most ``b.term_size`` nodes over the program's
    constructors and ``b.var_pool``, sorted by ``expr_order``."""
    constructors = p.signature.constructors
    by_size: list[list[Expr]] = [[], [BOTTOM, *(Var(v) for v in b.var_pool)]]
    for n in range(2, b.term_size + 1):
        by_size.append([])
    for n in range(1, b.term_size + 1):
        for c in constructors:
            if c.arity == 0:
                if n == 1:
                    by_size[1].append(App(c, ()))
                continue
            for sizes in _compositions(n - 1, c.arity):
                for args in product(*(by_size[s] for s in sizes)):
                    by_size[n].append(App(c, args))
    return sort_exprs(e for bucket in by_size for e in bucket)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write ``total`` as ``parts`` positive integers."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def match_pattern(pattern: Expr, value: Expr, env: dict[str, Expr]) -> bool:
    """Extend ``env`` so that ``pattern`` instantiates to ``value``.

    Repeated variables must be bound to equal values.  ``env`` is mutated
    and is garbage when the result is False.
    """
    if isinstance(pattern, Var):
        bound = env.get(pattern.name)
        if bound is None:
            env[pattern.name] = value
            return True
        return bound == value
    if isinstance(pattern, Bottom):
        return isinstance(value, Bottom)
    if not (isinstance(value, App) and value.symbol == pattern.symbol):
        return False
    return all(match_pattern(pa, va, env) for pa, va in zip(pattern.args, value.args))


class Evaluator:
    """Bounded denotations and proof search for one program and one set of bounds.

    Results are memoized per ``(expr, depth)``; the evaluator is meant to be
    thrown away after a query.
    """

    def __init__(self, program: Program, bounds: Bounds):
        self.program = program
        self.bounds = bounds
        self.universe = cterm_universe(program, bounds)
        self._memo: dict[tuple[Expr, int], frozenset[Expr]] = {}
        self._rules_by_symbol: dict = {}
        for i, rule in enumerate(program.rules):
            if isinstance(rule.lhs, App) and rule.lhs.symbol.is_function:
                self._rules_by_symbol.setdefault(rule.lhs.symbol, []).append(i)

    # -- denotation ---------------------------------------------------------

    def den(self, e: Expr, depth: int) -> frozenset[Expr]:
        if depth <= 0:
            return frozenset()
        key = (e, depth)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out: set[Expr] = {BOTTOM}
        if isinstance(e, Var):
            out.add(e)
        elif isinstance(e, App):
            if e.symbol.is_constructor:
                kids = [self.den(a, depth - 1) for a in e.args]
                for args in product(*kids):
                    out.add(App(e.symbol, args))
            else:
                for idx, theta in self.instances(e, depth):
                    rhs = self.program.rules[idx].rhs
                    out |= self.den(apply_subst(theta, rhs), depth - 1)
        result = frozenset(out)
        self._memo[key] = result
        return result

    def instances(self, e: App, depth: int) -> Iterator[tuple[int, Subst]]:
        """Every ``(rule index, θ)`` usable by OR at the root of ``e`` whose
        argument premises are derivable below ``depth``.

        Order: program order, then value tuples and extra-variable choices
        in ``expr_order``.
        """
        for idx in self._rules_by_symbol.get(e.symbol, ()):
            rule = self.program.rules[idx]
            per_arg = []
            for pat, arg in zip(rule.lhs.args, e.args):
                options = []
                for v in sorted(self.den(arg, depth - 1), key=expr_key):
                    env: dict[str, Expr] = {}
                    if match_pattern(pat, v, env):
                        options.append(env)
                if not options:
                    break
                per_arg.append(options)
            else:
                extras = sorted(vars(rule.rhs) - vars(rule.lhs))
                for envs in product(*per_arg):
                    merged = _merge(envs)
                    if merged is None:
                        continue
                    for choice in product(self.universe, repeat=len(extras)):
                        binding = dict(merged)
                        binding.update(zip(extras, choice))
                        yield idx, Subst(binding)

    # -- proof search -------------------------------------------------------

    def prove(self, e: Expr, t: Expr, depth: int) -> Optional[Derivation]:
        if depth <= 0:
            return None
        if isinstance(t, Bottom):
            return Derivation.bottom(e)
        if t not in self.den(e, depth):
            return None
        if isinstance(e, Var):
            return Derivation.refl_var(e)
        assert isinstance(e, App)
        if e.symbol.is_constructor:
            assert isinstance(t, App)
            kids = [self.prove(a, v, depth - 1) for a, v in zip(e.args, t.args)]
            assert all(k is not None for k in kids)
            return Derivation.decompose(e, t, kids)
        for idx, theta in self.instances(e, depth):
            rule = self.program.rules[idx]
            rhs = apply_subst(theta, rule.rhs)
            if t not in self.den(rhs, depth - 1):
                continue
            kids = [self.prove(a, apply_subst(theta, pat), depth - 1)
                    for a, pat in zip(e.args, rule.lhs.args)]
            kids.append(self.prove(rhs, t, depth - 1))
            assert all(k is not None for k in kids)
            return Derivation.outer(e, t, idx, theta, kids)
        raise AssertionError(f"{print_expr(t)} in den but no OR instance found")


def _merge(envs: Sequence[dict[str, Expr]]) -> Optional[dict[str, Expr]]:
    merged: dict[str, Expr] = {}
    for env in envs:
        for k, v in env.items():
            seen = merged.get(k)
            if seen is None:
                merged[k] = v
            elif seen != v:
                return None
    return merged


def denotation(p: Program, e: Expr, b: Bounds) -> tuple[Expr, ...]:
    """Values of ``e`` derivable within ``b``, sorted by ``expr_order``."""
    return sort_exprs(Evaluator(p, b).den(e, b.depth))


def prove(p: Program, e: Expr, t: Expr, b: Bounds) -> Derivation:
    """Find a derivation of ``e ⊳ t`` of height at most ``b.depth``.

    Raises :class:`NotFoundWithinBounds` when the bounded search space holds
    none, and ``ValueError`` when ``t`` is not a partial c-term.
    """
    if not is_partial_cterm(t):
        raise ValueError(f"target {print_expr(t)} is not a partial c-term")
    d = Evaluator(p, b).prove(e, t, b.depth)
    if d is None:
        raise NotFoundWithinBounds(f"no derivation of {print_expr(e)} ⊳ {print_expr(t)} within {b}")
    return d
