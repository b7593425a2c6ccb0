"""A laboratory for the CRWL proof calculus of functional-logic programming."""

from .calculus import (
    Bounds, CheckResult, Derivation, NotFoundWithinBounds, Rule, Statement, Witness,
    check_derivation, cterm_universe, denotation, prove,
)
from .context import (
    CApp, CBottom, CVar, Context, Hole, HOLE, contexts_of, fill, num_holes, one_hole,
    one_hole_split, parse_context, print_context,
)
from .order import leq, lower_set, lt_strict
from .subst import Subst, apply_subst, compose, domain, is_csubst
from .term import (
    BOTTOM, App, Bottom, Expr, Program, RewriteRule, Symbol, SymbolKind, Var,
    expr_order, is_linear, is_partial_cterm, is_total, lint_program, parse_expr,
    parse_program, print_expr, print_program,
)
from .theorems import (
    check_contextual_equivalence, join_context, polarity_transform, refl_derivation,
    split_context, subst_closure,
)

__version__ = "0.1.0"
