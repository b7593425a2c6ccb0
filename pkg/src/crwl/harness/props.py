"""Property suites over generated inputs.

Each property is registered with :func:`~crwl.harness.runner.prop` and
grouped into a suite: term, subst, order, context, calculus, oracle,
theorems.
"""

from __future__ import annotations

from ..calculus import (
    Bounds, Evaluator, NotFoundWithinBounds, check_derivation, denotation, prove,
)
from ..context import (
    CApp, NotApplicable, contexts_of, embed, fill, no_hole, num_holes, one_hole,
    one_hole_split, print_context,
)
from ..order import leq, lower_set, lt_strict
from ..subst import EMPTY, apply_subst, compose, is_csubst
from ..term import (
    BOTTOM, App, Bottom, Program, Var, expr_order, height, is_partial_cterm,
    lint_program, parse_expr, parse_program, print_expr, print_program, signature_of,
    size, subterms,
)
from ..theorems import (
    join_context, polarity_transform, refl_derivation, split_context, subst_closure,
)
from .oracle import crwl_program_ok, oracle_denotation, oracle_lower_set
from .runner import Discard, prop

P = print_expr
SELECT = 10**6


def _pick(seq, k):
    return seq[k % len(seq)]


# ---------------------------------------------------------------------------
# term
# ---------------------------------------------------------------------------

@prop("term", lambda g: (g.expr(bottom=True),))
def print_parse_roundtrip(e):
    back = parse_expr(print_expr(e), signature_of(e))
    if back != e:
        return f"{P(e)} reparsed as {P(back)}"


@prop("term", lambda g: (g.program(),))
def program_roundtrip(p):
    back = parse_program(print_program(p))
    if back.rules != p.rules:
        return f"rules changed:\n{print_program(p)}---\n{print_program(back)}"


@prop("term", lambda g: (g.expr(bottom=True), g.expr(bottom=True), g.expr(bottom=True)))
def expr_order_total(a, b, c):
    for x, y in ((a, b), (b, c), (a, c)):
        if expr_order(x, y) != -expr_order(y, x):
            return f"not antisymmetric on {P(x)}, {P(y)}"
        if (expr_order(x, y) == 0) != (x == y):
            return f"order 0 disagrees with equality on {P(x)}, {P(y)}"
    for x in (a, b, c):
        for y in (a, b, c):
            for z in (a, b, c):
                if expr_order(x, y) <= 0 and expr_order(y, z) <= 0 and expr_order(x, z) > 0:
                    return f"not transitive on {P(x)}, {P(y)}, {P(z)}"


@prop("term", lambda g: (g.expr(bottom=True),))
def cterm_subterm_closed(e):
    if is_partial_cterm(e):
        for s in subterms(e):
            if not is_partial_cterm(s):
                return f"subterm {P(s)} of c-term {P(e)} is not a c-term"


@prop("term", lambda g: (g.program(wild=g.chance(0.6)),))
def lint_soundness(p):
    """Empty lint report exactly for programs satisfying the reference predicate."""
    report = lint_program(p)
    if (not report) != crwl_program_ok(p):
        return f"lint says {[d.kind.value for d in report]}, reference says {crwl_program_ok(p)}"


@prop("term", lambda g: (g.program(),))
def generated_programs_lint_clean(p):
    kinds = {d.kind.value for d in lint_program(p)}
    if "NonLinearLhs" in kinds:
        raise Discard  # expected when nonlinear generation is enabled
    if kinds:
        return f"generated program has lint findings {sorted(kinds)}"


# ---------------------------------------------------------------------------
# subst
# ---------------------------------------------------------------------------

def _gen_subst_any(g):
    return g.subst(csubst=g.chance(0.5))


@prop("subst", lambda g: (_gen_subst_any(g), _gen_subst_any(g), g.expr(bottom=True)))
def subs_comp_ap(theta, sigma, e):
    lhs = apply_subst(compose(theta, sigma), e)
    rhs = apply_subst(theta, apply_subst(sigma, e))
    if lhs != rhs:
        return f"composition gives {P(lhs)}, sequential application {P(rhs)}"


@prop("subst", lambda g: (g.subst(), g.subst()))
def csubst_comp_closed(theta, sigma):
    if not is_csubst(compose(theta, sigma)):
        return f"composition {compose(theta, sigma)!r} is not a c-substitution"


@prop("subst", lambda g: (g.subst(), g.cterm()))
def csubst_application(theta, t):
    out = apply_subst(theta, t)
    if not is_partial_cterm(out):
        return f"{P(out)} is not a c-term"


@prop("subst", lambda g: (_gen_subst_any(g), g.expr(bottom=True)))
def subst_identity(sigma, e):
    if apply_subst(EMPTY, e) != e:
        return "empty substitution changed the expression"
    if compose(EMPTY, sigma) != sigma or compose(sigma, EMPTY) != sigma:
        return "empty substitution is not a unit of composition"


@prop("subst", lambda g: (_gen_subst_any(g), _gen_subst_any(g), _gen_subst_any(g)))
def compose_associative(a, b, c):
    left, right = compose(compose(a, b), c), compose(a, compose(b, c))
    if left != right:
        return f"{left!r} != {right!r}"


@prop("subst", lambda g: (_gen_subst_any(g), _gen_subst_any(g)))
def subst_canonical(theta, sigma):
    rho = compose(theta, sigma)
    for k, v in rho.items():
        if v == Var(k):
            return f"identity binding {k} stored"


# ---------------------------------------------------------------------------
# order
# ---------------------------------------------------------------------------

def _chain(g):
    c = g.expr(bottom=True)
    b = g.prune(c)
    a = g.prune(b)
    return a, b, c


@prop("order", lambda g: (g.expr(bottom=True),))
def ordap_refl(e):
    if not leq(e, e) or lt_strict(e, e):
        return "not reflexive"


@prop("order", _chain)
def ordap_trans(a, b, c):
    if not (leq(a, b) and leq(b, c)):
        raise Discard
    if not leq(a, c):
        return f"{P(a)} ⊑ {P(b)} ⊑ {P(c)} but not {P(a)} ⊑ {P(c)}"


@prop("order", lambda g: (lambda a, b, c: (g.choice([a, b, c]), g.choice([a, b, c])))(*_chain(g)))
def ordap_antisym(a, b):
    if leq(a, b) and leq(b, a) and a != b:
        return f"{P(a)} and {P(b)} are mutually below"


def _pair(g):
    a, b, c = _chain(g)
    x, y = g.choice([(a, c), (b, c), (c, a), (a, g.expr(bottom=True))])
    return x, y


@prop("order", _pair)
def ordap_inversions(x, y):
    """The five inversion lemmas, on both orientations of the pair."""
    for e, e2 in ((x, y), (y, x)):
        if not leq(e, e2):
            continue
        if isinstance(e2, Bottom) and not isinstance(e, Bottom):
            return f"ordapPerp: {P(e)} ⊑ _|_"
        if isinstance(e, Var) and e2 != e:
            return f"ordapVar: {P(e)} ⊑ {P(e2)}"
        if isinstance(e2, Var) and e not in (BOTTOM, e2):
            return f"ordapVar_converse: {P(e)} ⊑ {P(e2)}"
        if isinstance(e, App):
            if not (isinstance(e2, App) and e2.symbol == e.symbol
                    and all(leq(a, b) for a, b in zip(e.args, e2.args))):
                return f"ordapAp: {P(e)} ⊑ {P(e2)}"
        if isinstance(e2, App) and not isinstance(e, Bottom):
            if not (isinstance(e, App) and e.symbol == e2.symbol
                    and all(leq(a, b) for a, b in zip(e.args, e2.args))):
                return f"ordapAp_converse: {P(e)} ⊑ {P(e2)}"


@prop("order", lambda g: (g.expr(bottom=True), g.expr(bottom=True)))
def lower_set_correct(e, other):
    lows = lower_set(e)
    if set(lows) != set(oracle_lower_set(e)):
        return f"lower_set({P(e)}) has {len(lows)} elements, brute force {len(oracle_lower_set(e))}"
    if any(not leq(x, e) for x in lows):
        return "element of lower_set not below"
    if size(other) <= size(e) and (other in lows) != leq(other, e):
        return f"membership of {P(other)} disagrees with leq"
    if any(expr_order(x, y) >= 0 for x, y in zip(lows, lows[1:])):
        return "lower_set not strictly sorted"


@prop("order", lambda g: (lambda a, b, c: (a, c, g.context()))(*_chain(g)))
def ordap_context_compatible(a, b, c):
    if leq(a, b) and not leq(fill(a, c), fill(b, c)):
        return f"{P(a)} ⊑ {P(b)} not preserved by {print_context(c)}"


# ---------------------------------------------------------------------------
# context
# ---------------------------------------------------------------------------

@prop("context", lambda g: (g.expr(bottom=True), g.expr(bottom=True), g.zero_hole_context()))
def no_hole_ap_dont_care(e, e2, c):
    if no_hole(c) and fill(e, c) != fill(e2, c):
        return "filling a hole-free context depends on the argument"


@prop("context", lambda g: (g.expr(bottom=True),))
def fill_split_coherence(e):
    occs = contexts_of(e)
    if len(occs) != size(e):
        return f"{len(occs)} occurrences for {size(e)} nodes"
    for c, s in occs:
        if not one_hole(c):
            return f"{print_context(c)} does not have one hole"
        if fill(s, c) != e:
            return f"{print_context(c)}[{P(s)}] != {P(e)}"


@prop("context", lambda g: (g.context(),))
def hole_count_additive(c):
    if isinstance(c, CApp) and num_holes(c) != sum(num_holes(a) for a in c.args):
        return "num_holes not additive"
    if not one_hole(c):
        return f"generated context {print_context(c)} is not one-hole"


@prop("context", lambda g: (g.expr(bottom=True), g.expr(bottom=True)))
def embed_fill(e, x):
    if fill(x, embed(e)) != e:
        return "embedded expression depends on the filler"


@prop("context", lambda g: (g.context(),))
def one_hole_split_decomposes(c):
    if not isinstance(c, CApp):
        try:
            one_hole_split(c)
        except NotApplicable:
            return None
        return "split of a non-application should fail"
    prefix, pivot, suffix = one_hole_split(c)
    if prefix + (pivot,) + suffix != c.args:
        return "pieces do not reassemble"
    if not one_hole(pivot) or not all(no_hole(a) for a in prefix + suffix):
        return "hole is not in the pivot alone"


# ---------------------------------------------------------------------------
# calculus
# ---------------------------------------------------------------------------

def _peb(g, max_depth=3):
    p = g.program()
    return p, g.call(p), g.bounds(max_depth, 2, min_depth=2)


@prop("calculus", _peb)
def cterm_vals(p, e, b):
    for t in denotation(p, e, b):
        if not is_partial_cterm(t):
            return f"value {P(t)} is not a partial c-term"


@prop("calculus", lambda g: (g.program(), g.cterm(6)))
def cterm_refl(p, t):
    if t not in denotation(p, t, Bounds(height(t))):
        return f"{P(t)} not in its own denotation at depth {height(t)}"


@prop("calculus", lambda g: (Program(), g.cterm(6)))
def less_cterm_ordap_empty(p, t):
    got = denotation(p, t, Bounds(height(t) + 1))
    if got != lower_set(t):
        return f"denotation has {len(got)} values, lower set {len(lower_set(t))}"


@prop("calculus", lambda g: (g.program(), g.cterm(6)))
def less_cterm_ordap_program(p, t):
    got = denotation(p, t, Bounds(height(t) + 1))
    if got != lower_set(t):
        return f"denotation has {len(got)} values, lower set {len(lower_set(t))}"


@prop("calculus", lambda g: (*_peb(g), g.int(0, 1), g.int(0, 1)))
def denotation_monotone(p, e, b, extra_depth, extra_size):
    bigger = Bounds(b.depth + extra_depth, b.term_size + extra_size, b.var_pool)
    small, large = set(denotation(p, e, b)), set(denotation(p, e, bigger))
    if not small <= large:
        return f"lost {[P(t) for t in small - large]} when bounds grew"


@prop("calculus", _peb)
def bottom_member(p, e, b):
    if BOTTOM not in denotation(p, e, b):
        return "_|_ missing"


@prop("calculus", _peb)
def enumeration_sound(p, e, b):
    """Every enumerated value has a checker-valid proof within the bounds."""
    for t in denotation(p, e, b):
        d = prove(p, e, t, b)
        res = check_derivation(p, d)
        if not res.valid:
            return f"proof of {P(e)} ⊳ {P(t)} rejected:\n{res}"
        if d.stmt.expr != e or d.stmt.value != t or d.height > b.depth:
            return f"proof has wrong root {d.stmt} or height {d.height}"


@prop("calculus", lambda g: (*_peb(g), g.cterm(4)))
def prove_iff_denotation(p, e, b, t):
    member = t in denotation(p, e, b)
    try:
        prove(p, e, t, b)
        found = True
    except NotFoundWithinBounds:
        found = False
    if member != found:
        return f"membership {member} but proof search {found} for {P(t)}"


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

@prop("oracle", _peb)
def oracle_agreement(p, e, b):
    ours = denotation(p, e, b)
    ref = tuple(oracle_denotation(p, e, b.depth, b.term_size, b.var_pool))
    if ours != ref:
        missing = [P(t) for t in ref if t not in ours]
        extra = [P(t) for t in ours if t not in ref]
        return f"engine lacks {missing}, has extra {extra}"


# ---------------------------------------------------------------------------
# theorems
# ---------------------------------------------------------------------------

def _goal(p, e, b, k):
    vals = denotation(p, e, b)
    defined = [v for v in vals if not isinstance(v, Bottom)]
    t = _pick(defined if defined and k % 4 else vals, k // 4)
    return t, prove(p, e, t, b)


def _theory_case(g):
    p = g.program(min_rules=1)
    return p, g.call(p), g.bounds(5, 2, min_depth=3), g.int(0, SELECT)


@prop("theorems", lambda g: (*_theory_case(g), g.subst()))
def subst_closure_valid(p, e, b, k, theta):
    t, d = _goal(p, e, b, k)
    out = subst_closure(p, d, theta, validate=False)
    res = check_derivation(p, out)
    want = (apply_subst(theta, e), apply_subst(theta, t))
    if not res.valid:
        return f"closure of {d.stmt} under {theta!r} rejected:\n{res}"
    if (out.expr, out.value) != want:
        return f"closure proves {out.stmt}"


def _polarity_case(g):
    p, big, b, k = _theory_case(g)
    return p, g.prune(big), big, b, k, g.int(0, SELECT)


@prop("theorems", _polarity_case)
def polarity_valid(p, e, e_big, b, k, k2):
    if not leq(e, e_big):
        raise Discard
    t, d = _goal(p, e, b, k)
    t2 = _pick(lower_set(t), k2)
    out = polarity_transform(p, d, e_big, t2, validate=False)
    res = check_derivation(p, out)
    if not res.valid:
        return f"polarity {d.stmt} to {P(e_big)} ⊳ {P(t2)} rejected:\n{res}"
    if (out.expr, out.value) != (e_big, t2):
        return f"polarity proves {out.stmt}"
    if out.height > d.height:
        return f"height grew from {d.height} to {out.height}"
    if t2 not in denotation(p, e_big, b):
        return f"{P(t2)} missing from the denotation of {P(e_big)}"


@prop("theorems", lambda g: (*_theory_case(g), g.int(0, SELECT)))
def split_join_roundtrip(p, e, b, k, k2):
    t, d = _goal(p, e, b, k)
    c, sub = _pick(contexts_of(e), k2)
    s, d1, d2 = split_context(p, d, c, sub, validate=False)
    if not is_partial_cterm(s):
        return f"intermediate value {P(s)} is not a c-term"
    for name, part, stmt in (("d1", d1, (sub, s)), ("d2", d2, (fill(s, c), t))):
        res = check_derivation(p, part)
        if not res.valid:
            return f"{name} rejected for {print_context(c)}:\n{res}"
        if (part.expr, part.value) != stmt:
            return f"{name} proves {part.stmt}"
    back = join_context(p, d2, d1, c, sub, s, validate=False)
    res = check_derivation(p, back)
    if not res.valid:
        return f"join rejected for {print_context(c)}:\n{res}"
    if back.stmt != d.stmt:
        return f"join proves {back.stmt}, expected {d.stmt}"


@prop("theorems", lambda g: (*_theory_case(g), g.int(0, SELECT), g.int(0, SELECT)))
def join_inclusion(p, e, b, k, k2, k3):
    """s in den(e) and t in den(C[s]) give a valid proof of C[e] ⊳ t."""
    c, sub = _pick(contexts_of(e), k)
    ev = Evaluator(p, b)
    s = _pick(sorted(ev.den(sub, b.depth), key=lambda x: print_expr(x)), k2)
    if not is_partial_cterm(s):
        return f"{P(s)} is not a c-term"
    filled = fill(s, c)
    t = _pick(sorted(ev.den(filled, b.depth), key=lambda x: print_expr(x)), k3)
    d1, d2 = ev.prove(sub, s, b.depth), ev.prove(filled, t, b.depth)
    out = join_context(p, d2, d1, c, sub, s, validate=False)
    res = check_derivation(p, out)
    if not res.valid:
        return f"join rejected:\n{res}"
    if (out.expr, out.value) != (e, t):
        return f"join proves {out.stmt}"


@prop("theorems", lambda g: (g.program(), g.cterm(6), g.int(0, SELECT)))
def less_cterm_ordap_r(p, t, k):
    s = _pick(lower_set(t), k)
    try:
        prove(p, t, s, Bounds(height(t) + 1))
    except NotFoundWithinBounds:
        return f"{P(t)} ⊳ {P(s)} not provable"
    out = polarity_transform(p, refl_derivation(p, t), t, s, validate=False)
    if not check_derivation(p, out).valid or out.stmt.value != s:
        return "polarity of reflexivity proof failed"
