"""Core syntax: symbols, partial expressions, programs, lint, and the text format.

Expressions are immutable trees with three node kinds: :class:`Bottom`,
:class:`Var` and :class:`App`.  A symbol carries its kind (constructor or
function) and arity, so two occurrences of a name with different kinds are
different symbols.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

__all__ = [
    "SymbolKind", "Symbol", "Bottom", "Var", "App", "Expr", "BOTTOM",
    "RewriteRule", "Program", "Signature", "LintKind", "Diagnostic", "LintReport",
    "ParseError", "parse_program", "parse_expr", "print_expr", "print_program",
    "is_partial_cterm", "is_total", "vars", "is_linear", "lint_program",
    "expr_order", "expr_key", "size", "height", "subterms", "cons", "fun", "app",
]


class SymbolKind(enum.Enum):
    CONSTRUCTOR = "Constructor"
    FUNCTION = "Function"


_KIND_RANK = {SymbolKind.CONSTRUCTOR: 0, SymbolKind.FUNCTION: 1}


@dataclass(frozen=True, order=False)
class Symbol:
    kind: SymbolKind
    name: str
    arity: int

    def __post_init__(self):
        if not self.name:
            raise ValueError("symbol name must be non-empty")
        if self.arity < 0:
            raise ValueError(f"negative arity for {self.name}")

    @property
    def is_constructor(self) -> bool:
        return self.kind is SymbolKind.CONSTRUCTOR

    @property
    def is_function(self) -> bool:
        return self.kind is SymbolKind.FUNCTION

    def __str__(self):
        return f"{self.name}/{self.arity}"


def cons(name: str, arity: int = 0) -> Symbol:
    return Symbol(SymbolKind.CONSTRUCTOR, name, arity)


def fun(name: str, arity: int = 0) -> Symbol:
    return Symbol(SymbolKind.FUNCTION, name, arity)


# Expression nodes cache their hash and sort key; equality checks the hash
# first so that memo tables over large trees stay cheap.

@dataclass(frozen=True, eq=False)
class Bottom:
    def __eq__(self, other):
        return isinstance(other, Bottom)

    def __hash__(self):
        return 0x5F3759DF

    def __repr__(self):
        return "Bottom()"


BOTTOM = Bottom()


@dataclass(frozen=True, eq=False)
class Var:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be non-empty")
        object.__setattr__(self, "_hash", hash(("Var", self.name)))

    def __eq__(self, other):
        return self is other or (isinstance(other, Var) and other.name == self.name)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False)
class App:
    symbol: Symbol
    args: tuple = ()
    _hash: int = field(init=False, repr=False, compare=False)
    _size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        args = tuple(self.args)
        if len(args) != self.symbol.arity:
            raise ValueError(
                f"{self.symbol.name} expects {self.symbol.arity} arguments, got {len(args)}"
            )
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_hash", hash((self.symbol, args)))
        object.__setattr__(self, "_size", 1 + sum(size(a) for a in args))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, App)
            and self._hash == other._hash
            and self.symbol == other.symbol
            and self.args == other.args
        )

    def __hash__(self):
        return self._hash


Expr = Union[Bottom, Var, App]


def app(symbol: Symbol, *args: Expr) -> App:
    return App(symbol, args)


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------

def is_partial_cterm(e: Expr) -> bool:
    """True when no function symbol occurs in ``e`` (bottom and variables allowed)."""
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, App):
            if node.symbol.is_function:
                return False
            stack.extend(node.args)
    return True


def is_total(e: Expr) -> bool:
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Bottom):
            return False
        if isinstance(node, App):
            stack.extend(node.args)
    return True


def _iter_vars(e: Expr) -> Iterator[str]:
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            yield node.name
        elif isinstance(node, App):
            stack.extend(reversed(node.args))


def vars(e: Expr) -> frozenset[str]:  # noqa: A001 - mirrors var(e)
    return frozenset(_iter_vars(e))


def is_linear(es: Iterable[Expr]) -> bool:
    seen: set[str] = set()
    for e in es:
        for v in _iter_vars(e):
            if v in seen:
                return False
            seen.add(v)
    return True


def size(e: Expr) -> int:
    """Node count."""
    if isinstance(e, App):
        return e._size
    return 1


def height(e: Expr) -> int:
    if isinstance(e, App) and e.args:
        return 1 + max(height(a) for a in e.args)
    return 1


def subterms(e: Expr) -> Iterator[Expr]:
    """Pre-order walk over every subterm occurrence, ``e`` first."""
    yield e
    if isinstance(e, App):
        for a in e.args:
            yield from subterms(a)


# ---------------------------------------------------------------------------
# Deterministic total order
# ---------------------------------------------------------------------------

def expr_key(e: Expr) -> tuple:
    """Sort key realising :func:`expr_order`.

    Bottom < Var < App; variables by name; applications by (kind, name,
    arity) and then lexicographically by their children.
    """
    if isinstance(e, Bottom):
        return (0,)
    if isinstance(e, Var):
        return (1, e.name)
    s = e.symbol
    return (2, _KIND_RANK[s.kind], s.name, s.arity, tuple(expr_key(a) for a in e.args))


def expr_order(a: Expr, b: Expr) -> int:
    """Three-way comparison: -1, 0 or 1."""
    ka, kb = expr_key(a), expr_key(b)
    return (ka > kb) - (ka < kb)


def sort_exprs(es: Iterable[Expr]) -> tuple[Expr, ...]:
    return tuple(sorted(set(es), key=expr_key))


# ---------------------------------------------------------------------------
# Programs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RewriteRule:
    lhs: Expr
    rhs: Expr

    def __str__(self):
        return f"{print_expr(self.lhs)} -> {print_expr(self.rhs)}"


class Signature(Mapping[str, Symbol]):
    """Name-indexed symbol table.  The first symbol seen for a name wins."""

    def __init__(self, symbols: Iterable[Symbol] = ()):
        table: dict[str, Symbol] = {}
        for s in symbols:
            table.setdefault(s.name, s)
        self._table = dict(sorted(table.items()))

    def __getitem__(self, name: str) -> Symbol:
        return self._table[name]

    def __iter__(self):
        return iter(self._table)

    def __len__(self):
        return len(self._table)

    def __eq__(self, other):
        return isinstance(other, Signature) and self._table == other._table

    def __hash__(self):
        return hash(tuple(self._table.values()))

    def __repr__(self):
        return "Signature(" + ", ".join(f"{s.kind.value[0]}:{s}" for s in self._table.values()) + ")"

    @property
    def constructors(self) -> tuple[Symbol, ...]:
        return tuple(s for s in self._table.values() if s.is_constructor)

    @property
    def functions(self) -> tuple[Symbol, ...]:
        return tuple(s for s in self._table.values() if s.is_function)

    def merge(self, other: Iterable[Symbol]) -> "Signature":
        return Signature(list(self._table.values()) + list(other))


def _symbols_of(e: Expr) -> Iterator[Symbol]:
    for node in subterms(e):
        if isinstance(node, App):
            yield node.symbol


@dataclass(frozen=True)
class Program:
    """An ordered, duplicate-free sequence of rules plus its signature.

    Rule order only fixes enumeration order; duplicates are dropped on
    construction.  When no signature is given it is derived from the rules.
    """

    rules: tuple[RewriteRule, ...] = ()
    signature: Signature = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        rules = tuple(dict.fromkeys(self.rules))
        object.__setattr__(self, "rules", rules)
        derived = Signature(s for r in rules for side in (r.lhs, r.rhs) for s in _symbols_of(side))
        sig = derived if self.signature is None else self.signature.merge(derived.values())
        object.__setattr__(self, "signature", sig)

    def __len__(self):
        return len(self.rules)

    def __str__(self):
        return print_program(self)


EMPTY_PROGRAM = Program()


# ---------------------------------------------------------------------------
# Lint
# ---------------------------------------------------------------------------

class LintKind(enum.Enum):
    NOT_FUNCTION_ROOT = "NotFunctionRoot"
    ARG_NOT_CTERM = "ArgNotCTerm"
    NON_LINEAR_LHS = "NonLinearLhs"
    BOTTOM_IN_RULE = "BottomInRule"
    ARITY_MISMATCH = "ArityMismatch"


@dataclass(frozen=True)
class Diagnostic:
    rule_index: int
    kind: LintKind
    message: str

    def __str__(self):
        return f"rule {self.rule_index}: {self.kind.value}: {self.message}"


@dataclass(frozen=True)
class LintReport:
    diagnostics: tuple[Diagnostic, ...] = ()

    def __bool__(self):
        # Truthy when there is something to report.
        return bool(self.diagnostics)

    def __iter__(self):
        return iter(self.diagnostics)

    def __len__(self):
        return len(self.diagnostics)

    @property
    def kinds(self) -> list[LintKind]:
        return [d.kind for d in self.diagnostics]


def lint_program(p: Program) -> LintReport:
    """Check constructor discipline and left-linearity of every rule."""
    out: list[Diagnostic] = []
    for i, rule in enumerate(p.rules):
        for side in (rule.lhs, rule.rhs):
            for s in _symbols_of(side):
                declared = p.signature.get(s.name)
                if declared is not None and declared != s:
                    out.append(Diagnostic(
                        i, LintKind.ARITY_MISMATCH,
                        f"{s.name} used as {s.kind.value}/{s.arity}, "
                        f"declared {declared.kind.value}/{declared.arity}",
                    ))
        lhs = rule.lhs
        if not (isinstance(lhs, App) and lhs.symbol.is_function):
            out.append(Diagnostic(i, LintKind.NOT_FUNCTION_ROOT,
                                  f"lhs {print_expr(lhs)} is not a function call"))
        else:
            for j, arg in enumerate(lhs.args):
                if not (is_partial_cterm(arg) and is_total(arg)):
                    out.append(Diagnostic(i, LintKind.ARG_NOT_CTERM,
                                          f"argument {j} ({print_expr(arg)}) is not a c-term"))
            if not is_linear(lhs.args):
                out.append(Diagnostic(i, LintKind.NON_LINEAR_LHS,
                                      f"a variable repeats in {print_expr(lhs)}"))
        if not (is_total(rule.lhs) and is_total(rule.rhs)):
            out.append(Diagnostic(i, LintKind.BOTTOM_IN_RULE, "_|_ occurs in the rule"))
    return LintReport(tuple(out))


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

BOTTOM_TEXT = "_|_"


def print_expr(e: Expr) -> str:
    if isinstance(e, Bottom):
        return BOTTOM_TEXT
    if isinstance(e, Var):
        return e.name
    if not e.args:
        return e.symbol.name
    return e.symbol.name + "(" + ",".join(print_expr(a) for a in e.args) + ")"


def print_program(p: Program) -> str:
    used = {s.name for r in p.rules for side in (r.lhs, r.rhs) for s in _symbols_of(side)}
    roots = {r.lhs.symbol.name for r in p.rules if isinstance(r.lhs, App)}
    lines = []
    for s in p.signature.constructors:
        if s.name not in used or s.name in roots:
            lines.append(f"data {s.name}/{s.arity};")
    lines.extend(f"{r};" for r in p.rules)
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column = line, column
        where = f"{line}:{column}: " if line else ""
        super().__init__(where + message)


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>--[^\n]*)
  | (?P<bottom>_\|_)
  | (?P<arrow>->)
  | (?P<hole>\[\s*\])
  | (?P<punct>[(),;/])
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


# Raw syntax before symbol classification: ("var", name) | ("bot",) | ("hole",)
# | ("app", name, [raw...], tok)

class _Parser:
    def __init__(self, text: str, *, allow_bottom: bool, allow_hole: bool):
        self.toks = _tokenize(text)
        self.i = 0
        self.allow_bottom = allow_bottom
        self.allow_hole = allow_hole

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.tok
        if tok.text != text:
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        self.i += 1
        return tok

    def raw_expr(self):
        tok = self.tok
        if tok.kind == "bottom":
            if not self.allow_bottom:
                raise self.error("'_|_' is reserved and may not appear in program text")
            self.i += 1
            return ("bot",)
        if tok.kind == "hole":
            if not self.allow_hole:
                raise self.error("'[]' is only allowed in contexts")
            self.i += 1
            return ("hole",)
        if tok.kind == "var":
            self.i += 1
            return ("var", tok.text)
        if tok.kind == "ident":
            self.i += 1
            args = []
            if self.tok.text == "(":
                self.i += 1
                if self.tok.text != ")":
                    args.append(self.raw_expr())
                    while self.tok.text == ",":
                        self.i += 1
                        args.append(self.raw_expr())
                self.expect(")")
            return ("app", tok.text, args, tok)
        raise self.error(f"expected an expression, found {tok.text or 'end of input'!r}")

    def at_eof(self) -> bool:
        return self.tok.kind == "eof"


def _collect_arities(raw, table: dict[str, tuple[int, _Tok]]):
    if raw[0] != "app":
        return
    _, name, args, tok = raw
    known = table.get(name)
    if known is None:
        table[name] = (len(args), tok)
    elif known[0] != len(args):
        raise ParseError(
            f"arity conflict for {name}: used with {len(args)} and {known[0]} arguments",
            tok.line, tok.col,
        )
    for a in args:
        _collect_arities(a, table)


def _build(raw, sig: Mapping[str, Symbol], hole=None):
    tag = raw[0]
    if tag == "bot":
        return BOTTOM if hole is None else hole.bottom
    if tag == "var":
        return Var(raw[1]) if hole is None else hole.var(raw[1])
    if tag == "hole":
        return hole.hole
    _, name, args, tok = raw
    sym = sig.get(name)
    if sym is None:
        sym = cons(name, len(args))
    elif sym.arity != len(args):
        raise ParseError(
            f"arity conflict for {name}: expected {sym.arity} arguments, got {len(args)}",
            tok.line, tok.col,
        )
    kids = tuple(_build(a, sig, hole) for a in args)
    return App(sym, kids) if hole is None else hole.app(sym, kids)


def parse_program(text: str) -> Program:
    """Parse ``lhs -> rhs;`` rules and ``data c/n;`` declarations.

    Names at the root of some left-hand side become function symbols, all
    others constructors; a ``data`` declaration forces constructor kind.
    """
    ps = _Parser(text, allow_bottom=False, allow_hole=False)
    raw_rules = []
    declared: dict[str, tuple[int, _Tok]] = {}
    while not ps.at_eof():
        tok = ps.tok
        if tok.kind == "ident" and tok.text == "data" and ps.toks[ps.i + 1].kind == "ident":
            ps.i += 1
            name_tok = ps.tok
            ps.i += 1
            ps.expect("/")
            if ps.tok.kind != "int":
                raise ps.error("expected an arity after '/'")
            arity = int(ps.tok.text)
            ps.i += 1
            ps.expect(";")
            prev = declared.get(name_tok.text)
            if prev is not None and prev[0] != arity:
                raise ParseError(f"conflicting declarations for {name_tok.text}",
                                 name_tok.line, name_tok.col)
            declared[name_tok.text] = (arity, name_tok)
            continue
        lhs = ps.raw_expr()
        ps.expect("->")
        rhs = ps.raw_expr()
        ps.expect(";")
        raw_rules.append((lhs, rhs))

    arities: dict[str, tuple[int, _Tok]] = dict(declared)
    for lhs, rhs in raw_rules:
        _collect_arities(lhs, arities)
        _collect_arities(rhs, arities)
    roots = {lhs[1] for lhs, _ in raw_rules if lhs[0] == "app"}
    symbols = []
    for name, (arity, _) in arities.items():
        is_fn = name in roots and name not in declared
        symbols.append(fun(name, arity) if is_fn else cons(name, arity))
    sig = Signature(symbols)
    rules = tuple(RewriteRule(_build(l, sig), _build(r, sig)) for l, r in raw_rules)
    return Program(rules, sig)


def _parse_single(text: str, *, allow_hole: bool):
    ps = _Parser(text, allow_bottom=True, allow_hole=allow_hole)
    raw = ps.raw_expr()
    if not ps.at_eof():
        raise ps.error(f"unexpected trailing input {ps.tok.text!r}")
    table: dict[str, tuple[int, _Tok]] = {}
    _collect_arities(raw, table)
    return raw


def parse_expr(text: str, signature: Optional[Mapping[str, Symbol]] = None) -> Expr:
    """Parse one expression; ``_|_`` denotes bottom.

    Names are resolved against ``signature``; unknown names become
    constructors with the arity they are used at.
    """
    raw = _parse_single(text, allow_hole=False)
    return _build(raw, signature or {})


def signature_of(*es: Expr) -> Signature:
    return Signature(s for e in es for s in _symbols_of(e))
