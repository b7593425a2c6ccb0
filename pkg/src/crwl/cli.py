"""Command-line front end: ``crwl lint|eval|prove|check|lower|props``.

Exit codes: 0 success, 1 a negative answer (lint findings, no proof within
bounds, an invalid certificate, a failing property), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .calculus import Bounds, NotFoundWithinBounds, check_derivation, denotation, prove
from .certificate import dumps, loads
from .order import lower_set
from .term import (
    EMPTY_PROGRAM, ParseError, Program, is_partial_cterm, lint_program, parse_expr,
    parse_program, print_expr,
)


class UsageError(Exception):
    """Bad input that is reported on stderr with exit status 2."""


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _program(path: Optional[str]) -> Program:
    if path is None:
        return EMPTY_PROGRAM
    try:
        return parse_program(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}:{exc}") from None


def _expr(text: str, p: Program, what: str):
    try:
        return parse_expr(text, p.signature)
    except ParseError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _bounds(args) -> Bounds:
    pool = tuple(v.strip() for v in args.vars.split(",") if v.strip()) if args.vars else ()
    for v in pool:
        if not (v[:1].isupper() and v.replace("_", "").isalnum()):
            raise UsageError(f"--vars: {v!r} is not a variable name")
    try:
        return Bounds(args.depth, args.term_size, pool)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands --------------------------------------------------------------

def cmd_lint(args, out) -> int:
    report = lint_program(_program(args.program))
    if not report:
        print("no issues", file=out)
        return 0
    for diag in report:
        print(diag, file=out)
    return 1


def cmd_eval(args, out) -> int:
    p = _program(args.program)
    e = _expr(args.expr, p, "-e")
    b = _bounds(args)
    values = denotation(p, e, b)
    if args.json:
        print(json.dumps([print_expr(v) for v in values], ensure_ascii=False), file=out)
        return 0
    print(f"-- values derivable within bounds {b}", file=out)
    for v in values:
        print(print_expr(v), file=out)
    return 0


def cmd_prove(args, out) -> int:
    p = _program(args.program)
    e = _expr(args.expr, p, "-e")
    t = _expr(args.target, p, "-t")
    if not is_partial_cterm(t):
        raise UsageError(f"-t: {print_expr(t)} is not a partial c-term")
    b = _bounds(args)
    try:
        d = prove(p, e, t, b)
    except NotFoundWithinBounds:
        print(f"no derivation of {print_expr(e)} ⊳ {print_expr(t)} within bounds {b}",
              file=sys.stderr)
        return 1
    print(dumps(d), file=out)
    return 0


def cmd_check(args, out) -> int:
    p = _program(args.program)
    try:
        d = loads(_read(args.certificate), p.signature)
    except ParseError as exc:
        raise UsageError(f"{args.certificate}: {exc}") from None
    result = check_derivation(p, d)
    print(result, file=out)
    return 0 if result.valid else 1


def cmd_lower(args, out) -> int:
    p = _program(args.program)
    e = _expr(args.expr, p, "-e")
    for v in lower_set(e):
        print(print_expr(v), file=out)
    return 0


def cmd_props(args, out) -> int:
    # imported here so the other subcommands stay light
    from .harness import PROPERTIES, GenConfig, run_single, run_suites, suites

    cfg = GenConfig(seed=args.seed, allow_nonlinear=args.allow_nonlinear)
    if args.list:
        for p in PROPERTIES.values():
            print(f"{p.suite}/{p.name}", file=out)
        return 0
    if args.suite is not None and args.suite not in suites():
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(suites())}")
    for name in args.prop or ():
        if name not in PROPERTIES:
            raise UsageError(f"unknown property {name!r}")
    if args.case is not None:
        if not args.prop:
            raise UsageError("--case needs --prop")
        results = [run_single(PROPERTIES[n], cfg, args.case) for n in args.prop]
    else:
        results = run_suites(cfg, args.cases, args.prop, args.suite)
    failed = 0
    for r in results:
        print(r.summary(), file=out)
        if not r.ok:
            failed += 1
            print(r.failure.render(cfg), file=out)
    print(f"{len(results)} properties, {failed} failed (seed {cfg.seed})", file=out)
    return 1 if failed else 0


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crwl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def bounded(sp):
        sp.add_argument("--depth", type=int, required=True, help="maximum derivation height")
        sp.add_argument("--term-size", type=int, default=1,
                        help="node budget for extra-variable instances (default 1)")
        sp.add_argument("--vars", default="", help="comma-separated variables usable by extras")

    sp = sub.add_parser("lint", help="report non-CRWL program rules")
    sp.add_argument("program")
    sp.set_defaults(func=cmd_lint)

    sp = sub.add_parser("eval", help="bounded denotation of an expression")
    sp.add_argument("program")
    sp.add_argument("-e", "--expr", required=True)
    bounded(sp)
    sp.add_argument("--json", action="store_true", help="print one JSON array")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("prove", help="search for a derivation and print its certificate")
    sp.add_argument("program")
    sp.add_argument("-e", "--expr", required=True)
    sp.add_argument("-t", "--target", required=True)
    bounded(sp)
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("check", help="validate a JSON derivation certificate")
    sp.add_argument("program")
    sp.add_argument("certificate")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("lower", help="every expression below EXPR in the approximation order")
    sp.add_argument("-e", "--expr", required=True)
    sp.add_argument("--program", help="program supplying the signature")
    sp.set_defaults(func=cmd_lower)

    sp = sub.add_parser("props", help="run the property suites")
    sp.add_argument("--suite")
    sp.add_argument("--prop", action="append", help="property name (repeatable)")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--cases", type=int, default=100)
    sp.add_argument("--case", type=int, help="replay a single case index (needs --prop)")
    sp.add_argument("--allow-nonlinear", action="store_true",
                    help="generate programs with non-linear left-hand sides")
    sp.add_argument("--list", action="store_true", help="list properties and exit")
    sp.set_defaults(func=cmd_props)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"crwl {args.command}: {exc}", file=sys.stderr)
        return 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
