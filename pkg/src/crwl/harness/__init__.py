"""Generators, reference oracles and property suites."""

from . import props  # noqa: F401  registers the suites
from .gen import Gen, GenConfig, gen_context, gen_expr, gen_program, gen_subst
from .oracle import crwl_program_ok, oracle_denotation, oracle_lower_set
from .runner import PROPERTIES, Discard, Property, prop, run_property, run_single, run_suites, suites


def subst_leq(theta, sigma) -> bool:
    """Pointwise approximation between substitutions."""
    from ..order import leq
    from ..term import Var

    names = set(theta) | set(sigma)
    return all(leq(theta.get(x, Var(x)), sigma.get(x, Var(x))) for x in names)


__all__ = [
    "Gen", "GenConfig", "gen_expr", "gen_program", "gen_subst", "gen_context",
    "oracle_denotation", "oracle_lower_set", "crwl_program_ok", "PROPERTIES",
    "Discard", "Property", "prop", "run_property", "run_single", "run_suites", "suites", "subst_leq",
]
