"""Property registry, case runner, and greedy shrinking."""

from __future__ import annotations

import traceback
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Optional

from ..calculus import Bounds
from ..context import CApp, CBottom, CVar, Context, Hole, no_hole, print_context
from ..subst import Subst
from ..term import (
    BOTTOM, App, Bottom, Expr, Program, RewriteRule, Var, print_expr, print_program,
)
from .gen import Gen, GenConfig

__all__ = [
    "Discard", "Property", "PROPERTIES", "prop", "CaseFailure", "PropertyResult",
    "run_property", "run_suites", "suites", "render_value",
]


class Discard(Exception):
    """Raised by a check when the generated case does not meet its precondition."""


@dataclass(frozen=True)
class Property:
    name: str
    suite: str
    generate: Callable[[Gen], tuple]
    check: Callable[..., Optional[str]]
    doc: str = ""


PROPERTIES: dict[str, Property] = {}


def prop(suite: str, generate: Callable[[Gen], tuple], name: Optional[str] = None):
    """Register ``check(*generate(gen))``; it returns None on success or a
    failure message, and may raise :class:`Discard`."""

    def deco(check):
        pname = name or check.__name__
        if pname in PROPERTIES:
            raise ValueError(f"duplicate property {pname}")
        PROPERTIES[pname] = Property(pname, suite, generate, check, (check.__doc__ or "").strip())
        return check

    return deco


def suites() -> list[str]:
    return sorted({p.suite for p in PROPERTIES.values()})


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------

_PASS, _DISCARD = object(), object()


def _outcome(p: Property, args: tuple):
    try:
        msg = p.check(*args)
    except Discard:
        return _DISCARD
    except Exception as exc:  # any crash is a failure of the property
        last = traceback.extract_tb(exc.__traceback__)[-1]
        return f"{type(exc).__name__}: {exc} ({last.name}:{last.lineno})"
    return _PASS if msg is None or msg is True else str(msg)


@dataclass
class CaseFailure:
    prop: Property
    index: int
    args: tuple
    message: str
    shrunk: tuple
    shrunk_message: str
    shrink_steps: int

    def render(self, cfg: GenConfig) -> str:
        lines = [f"FAIL {self.prop.name} (suite {self.prop.suite}) case {self.index}: {self.message}"]
        lines.append(f"  counterexample (shrunk in {self.shrink_steps} steps): {self.shrunk_message}")
        for value in self.shrunk:
            lines.extend("    " + line for line in render_value(value).splitlines())
        replay = f"crwl props --prop {self.prop.name} --seed {cfg.seed} --case {self.index}"
        if cfg.allow_nonlinear:
            replay += " --allow-nonlinear"
        lines.append(f"  replay: {replay}")
        return "\n".join(lines)


@dataclass
class PropertyResult:
    prop: Property
    passed: int = 0
    discarded: int = 0
    failure: Optional[CaseFailure] = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f", {self.discarded} discarded" if self.discarded else ""
        return f"{status} {self.prop.suite}/{self.prop.name}: {self.passed} cases{extra}"


def run_property(p: Property, cfg: GenConfig, cases: int, *, start: int = 0,
                 max_discard_ratio: int = 10, shrink: bool = True) -> PropertyResult:
    """Run until ``cases`` non-discarded cases pass or one fails."""
    result = PropertyResult(p)
    i = start
    while result.passed < cases and result.discarded <= max_discard_ratio * cases:
        args = p.generate(Gen(cfg, i, p.name))
        outcome = _outcome(p, args)
        if outcome is _PASS:
            result.passed += 1
        elif outcome is _DISCARD:
            result.discarded += 1
        else:
            shrunk, msg, steps = _shrink(p, args, outcome) if shrink else (args, outcome, 0)
            result.failure = CaseFailure(p, i, args, outcome, shrunk, msg, steps)
            break
        i += 1
    return result


def run_single(p: Property, cfg: GenConfig, index: int) -> PropertyResult:
    return run_property(p, cfg, 1, start=index, max_discard_ratio=0)


def run_suites(cfg: GenConfig, cases: int, names: Optional[list[str]] = None,
               suite: Optional[str] = None) -> list[PropertyResult]:
    chosen = [
        p for p in PROPERTIES.values()
        if (suite is None or p.suite == suite) and (names is None or p.name in names)
    ]
    return [run_property(p, cfg, cases) for p in chosen]


# ---------------------------------------------------------------------------
# Shrinking
# ---------------------------------------------------------------------------

def _shrink(p: Property, args: tuple, message: str, budget: int = 300):
    steps = 0
    improved = True
    while improved and steps < budget:
        improved = False
        for pos, value in enumerate(args):
            for cand in shrink_value(value):
                trial = args[:pos] + (cand,) + args[pos + 1:]
                outcome = _outcome(p, trial)
                if outcome is not _PASS and outcome is not _DISCARD:
                    args, message = trial, outcome
                    steps += 1
                    improved = True
                    break
            if improved or steps >= budget:
                break
    return args, message, steps


def shrink_value(value: Any) -> Iterator[Any]:
    """Strictly smaller candidates for ``value``, most aggressive first."""
    if isinstance(value, bool):
        if value:
            yield False
    elif isinstance(value, int):
        for cand in (0, value // 2, value - 1):
            if 0 <= cand < value:
                yield cand
    elif isinstance(value, (Bottom, Var, App)):
        yield from _shrink_expr(value)
    elif isinstance(value, Program):
        yield from _shrink_program(value)
    elif isinstance(value, Subst):
        for k in value:
            yield Subst({x: v for x, v in value.items() if x != k})
        for k, v in value.items():
            for smaller in _shrink_expr(v):
                yield Subst({**value, k: smaller})
    elif isinstance(value, (Hole, CBottom, CVar, CApp)):
        yield from _shrink_context(value)
    elif isinstance(value, Bounds):
        if value.depth > 1:
            yield Bounds(value.depth - 1, value.term_size, value.var_pool)
        if value.term_size > 1:
            yield Bounds(value.depth, value.term_size - 1, value.var_pool)
        if value.var_pool:
            yield Bounds(value.depth, value.term_size, value.var_pool[:-1])


def _shrink_expr(e: Expr) -> Iterator[Expr]:
    if isinstance(e, Bottom):
        return
    yield BOTTOM
    if isinstance(e, App):
        yield from e.args
        for i, a in enumerate(e.args):
            for smaller in _shrink_expr(a):
                yield App(e.symbol, e.args[:i] + (smaller,) + e.args[i + 1:])


def _shrink_program(p: Program) -> Iterator[Program]:
    rules = p.rules
    for i in range(len(rules)):
        yield Program(rules[:i] + rules[i + 1:], p.signature)
    for i, r in enumerate(rules):
        for rhs in _shrink_expr(r.rhs):
            if isinstance(rhs, Bottom):
                continue  # keep shrunk programs free of bottom
            yield Program(rules[:i] + (RewriteRule(r.lhs, rhs),) + rules[i + 1:], p.signature)


def _shrink_context(c: Context) -> Iterator[Context]:
    if not isinstance(c, CApp):
        return
    for i, a in enumerate(c.args):
        if not no_hole(a):
            yield a
            for smaller in _shrink_context(a):
                yield CApp(c.symbol, c.args[:i] + (smaller,) + c.args[i + 1:])
        elif not isinstance(a, CBottom):
            yield CApp(c.symbol, c.args[:i] + (CBottom(),) + c.args[i + 1:])


def render_value(value: Any) -> str:
    if isinstance(value, (Bottom, Var, App)):
        return print_expr(value)
    if isinstance(value, Program):
        text = print_program(value).rstrip()
        return "program:\n" + ("\n".join("  " + l for l in text.splitlines()) or "  (empty)")
    if isinstance(value, (Hole, CBottom, CVar, CApp)):
        return "context " + print_context(value)
    if isinstance(value, Subst):
        return "subst " + repr(value)
    if isinstance(value, Bounds):
        return f"bounds {value}"
    return repr(value)
