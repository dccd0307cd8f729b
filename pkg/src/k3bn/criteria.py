"""Verdicts for the restriction map from sheaves on the surface to Brill-Noether loci.

Every check is broken into named conditions held in a registry, so a stored
report can be replayed from ``(g, m, v)`` alone.  A report passes exactly
when all of its listed conditions pass.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Optional

from . import hnpolygon as hn
from .exactnum import PrecisionExhausted
from .geometry import ORIGIN, Region, Segment, project, region_membership
from .lattice import (
    MukaiVector,
    SurfaceContext,
    derived_vectors,
    divisors,
    is_prime,
    is_primitive,
    jacobi_symbol,
    mukai_square,
)
from .regions import OmegaQuery, WallStatus, admits_no_wall


class Verdict(enum.Enum):
    Pass = "pass"
    Fail = "fail"
    Inconclusive = "inconclusive"


class Status(enum.Enum):
    Pass = "pass"
    Fail = "fail"
    Inconclusive = "inconclusive"
    Assumed = "assumed"


@dataclass(frozen=True)
class Condition:
    name: str
    anchor: str
    status: Status
    witness: str = ""
    values: tuple = ()  # (label, RadicalExpr) pairs behind the witness


@dataclass(frozen=True)
class CriterionReport:
    input: tuple
    verdict: Verdict
    route: str
    conditions: tuple = ()

    def __post_init__(self):
        all_pass = all(c.status is Status.Pass for c in self.conditions)
        if (self.verdict is Verdict.Pass) != (all_pass and bool(self.conditions)):
            raise ValueError("a report passes exactly when every listed condition passes")


# condition registry

@dataclass(frozen=True)
class _Entry:
    anchor: str
    fn: Callable


_REGISTRY: dict[str, _Entry] = {}


def _condition(name: str, anchor: str):
    def wrap(fn):
        _REGISTRY[name] = _Entry(anchor, fn)
        return fn
    return wrap


def _st(ok: bool) -> Status:
    return Status.Pass if ok else Status.Fail


def evaluate(name: str, ctx: SurfaceContext, m: int, v) -> Condition:
    entry = _REGISTRY[name]
    values = ()
    try:
        out = entry.fn(ctx, m, MukaiVector(*v))
        status, witness = out[0], out[1]
        if len(out) > 2:
            values = tuple(out[2].items())
    except PrecisionExhausted as exc:
        status, witness = Status.Inconclusive, f"precision exhausted: {exc}"
    return Condition(name, entry.anchor, status, witness, values)


def replay(cond: Condition, g: int, m: int, v) -> Condition:
    return evaluate(cond.name, SurfaceContext(g), m, v)


def condition_names() -> list[str]:
    return sorted(_REGISTRY)


def _combine(conds) -> Verdict:
    if all(c.status is Status.Pass for c in conds):
        return Verdict.Pass
    if any(c.status is Status.Fail for c in conds):
        return Verdict.Fail
    return Verdict.Inconclusive


def _gcd_ok(v) -> bool:
    return math.gcd(v.r, v.c) == 1


# injectivity

INJ_ANCHOR = "cor:inj-num/eq:inj-cond"
INJ_ANCHOR2 = "cor:inj-num/eq:inj-cond2"


@_condition("inj: r > v^2/2 + 1", INJ_ANCHOR)
def _inj_rank(ctx, m, v):
    bound = Fraction(mukai_square(ctx, v), 2) + 1
    return _st(v.r > bound), f"r={v.r}, v^2/2+1={bound}"


@_condition("inj: r > c/m", INJ_ANCHOR)
def _inj_slope(ctx, m, v):
    return _st(m * v.r > v.c), f"r={v.r}, c/m={Fraction(v.c, m)}"


@_condition("inj: c > 0", INJ_ANCHOR)
def _inj_c(ctx, m, v):
    return _st(v.c > 0), f"c={v.c}"


@_condition("inj: s > rc/(mr-c)", INJ_ANCHOR)
def _inj_s(ctx, m, v):
    den = m * v.r - v.c
    if den <= 0:
        return Status.Fail, "mr - c <= 0"
    bound = Fraction(v.r * v.c, den)
    return _st(v.s > bound), f"s={v.s}, rc/(mr-c)={bound}"


@_condition("inj: gcd(r,c) = 1", INJ_ANCHOR)
def _inj_gcd(ctx, m, v):
    return _st(_gcd_ok(v)), f"gcd={math.gcd(v.r, v.c)}"


@_condition("inj: genus bound", INJ_ANCHOR2)
def _inj_genus(ctx, m, v):
    sq = mukai_square(ctx, v)
    g1 = ctx.g - 1
    if sq < 0:
        return Status.Fail, f"v^2={sq} < 0"
    if sq == 0:
        return _st(g1 >= v.r), f"g-1={g1}, r={v.r}"
    den = m * v.r - v.c
    if v.c <= 0 or den <= 0:
        return Status.Fail, "needs c > 0 and mr > c"
    bound = max(Fraction(v.r * v.r, v.c), Fraction(v.r * v.r, den), Fraction(v.r + 1))
    return _st(g1 >= bound), f"g-1={g1}, bound={bound}"


INJ_CONDITIONS = (
    "inj: r > v^2/2 + 1",
    "inj: r > c/m",
    "inj: c > 0",
    "inj: s > rc/(mr-c)",
    "inj: gcd(r,c) = 1",
    "inj: genus bound",
)


def check_injectivity(ctx: SurfaceContext, m: int, v) -> CriterionReport:
    v = MukaiVector(*v)
    conds = tuple(evaluate(n, ctx, m, v) for n in INJ_CONDITIONS)
    return CriterionReport((ctx.g, m, v), _combine(conds), "cor:inj-num", conds)


@_condition("injectivity", INJ_ANCHOR)
def _inj_all(ctx, m, v):
    rep = check_injectivity(ctx, m, v)
    failed = [c.name for c in rep.conditions if c.status is not Status.Pass]
    return Status(rep.verdict.value), "all hold" if not failed else "violated: " + "; ".join(failed)


# sufficient no-wall criterion

class NoWallBranch(enum.Enum):
    SquareZero = "square-zero"
    FloorS = "floor-s"
    None_ = "none"


def check_no_wall_sufficient(ctx: SurfaceContext, v) -> NoWallBranch:
    r, c, s = v
    if not (r > 0 and c > 0 and s > 0):
        raise ValueError("needs r, c, s > 0")
    g1 = ctx.g - 1
    if mukai_square(ctx, v) == 0 and r // math.gcd(r, c) <= g1:
        return NoWallBranch.SquareZero
    if s == (g1 * c * c + 1) // r and g1 >= max(Fraction(r * r, c), Fraction(r + 1)):
        return NoWallBranch.FloorS
    return NoWallBranch.None_


# surjectivity

SPECIAL_INPUT = hn.BESPOKE_INPUT


def _family_k(ctx, v) -> Optional[int]:
    if ctx.g >= 3 and v.r == ctx.g - 1 and v.c > 0 and v.s == v.c * v.c and math.gcd(v.r, v.c) == 1:
        return v.c
    return None


@_condition("special-(7,2): 2-sharp", "sec:proofofthm/lem_sharp")
def _sp_sharp(ctx, m, v):
    d = hn.sharpness(ctx, m, v)
    return _st(d >= 2), f"sharpness={d}"


@_condition("special-(7,2): chain > hbar+chi-2(r+s)", "sec:proofofthm/eq:surjective")
def _sp_chain(ctx, m, v):
    if (ctx.g, m, v) != SPECIAL_INPUT:
        return Status.Fail, "only defined for g=7, m=2, v=(2,1,3)"
    b = hn.bespoke_values()
    return (_st(b.chain_holds), f"{b.chain} vs {b.chain_target}",
            {"chain": b.chain, "target": b.chain_target})


@_condition("special-(7,2): z1+1 not a vertex", "sec:proofofthm/eq:surjective")
def _sp_vertex(ctx, m, v):
    if (ctx.g, m, v) != SPECIAL_INPUT:
        return Status.Fail, "only defined for g=7, m=2, v=(2,1,3)"
    b = hn.bespoke_values()
    return (_st(b.vertex_holds), f"{b.vertex_margin} vs {b.vertex_target}",
            {"margin": b.vertex_margin, "target": b.vertex_target})


@_condition("thm_surj2: g < 2k and g != k", "thm_surj2")
def _f_b1(ctx, m, v):
    k = _family_k(ctx, v)
    if k is None:
        return Status.Fail, "v is not (g-1,k,k^2) with gcd(g-1,k)=1"
    return _st(hn.family_bullets(ctx.g, m, k)["g<2k,g!=k"]), f"k={k}"


@_condition("thm_surj2: g < 2k~ and g != k~", "thm_surj2")
def _f_b2(ctx, m, v):
    k = _family_k(ctx, v)
    if k is None:
        return Status.Fail, "v is not (g-1,k,k^2) with gcd(g-1,k)=1"
    return _st(hn.family_bullets(ctx.g, m, k)["g<2k~,g!=k~"]), f"k~={m * (ctx.g - 1) - k}"


@_condition("thm_surj2: k or k~ does not divide g+1", "thm_surj2")
def _f_b3(ctx, m, v):
    k = _family_k(ctx, v)
    if k is None:
        return Status.Fail, "v is not (g-1,k,k^2) with gcd(g-1,k)=1"
    return _st(hn.family_bullets(ctx.g, m, k)["k|g+1 or k~|g+1 fails"]), f"g+1={ctx.g + 1}"


@_condition("thm_surj2: polygon estimate", "thm_surj2/eq:est-3")
def _f_est(ctx, m, v):
    k = _family_k(ctx, v)
    if k is None:
        return Status.Fail, "v is not (g-1,k,k^2) with gcd(g-1,k)=1"
    res = hn.special_surj_check(ctx, m, k)
    if res.estimate is None:
        return Status.Fail, res.route
    return (_st(res.holds), f"{res.route}: {res.estimate} vs {res.target}",
            {"estimate": res.estimate, "target": res.target})


@_condition("cor:surj2: g >= 4r^2 + 1", "cor:surj2")
def _cs2(ctx, m, v):
    return _st(ctx.g >= 4 * v.r * v.r + 1), f"g={ctx.g}, 4r^2+1={4 * v.r * v.r + 1}"


def _thm_surj_pre(ctx, m, v) -> Optional[str]:
    if v.c <= 0 or m * v.r <= v.c:
        return "needs c > 0 and mr > c"
    chi = m * (ctx.g - 1) * (2 * v.c - m * v.r)
    if v.r + v.s <= 0 or v.r + v.s - chi <= 0:
        return "needs r+s > 0 and r+s-chi > 0"
    return None


@_condition("thm:surj (i)", "thm:surj")
def _ts1(ctx, m, v):
    bad = _thm_surj_pre(ctx, m, v)
    if bad:
        return Status.Fail, bad
    res = hn.surjectivity_inequality(ctx, m, v)
    return _st(res.cond_i), f"lhs={res.value_i}"


@_condition("thm:surj (ii)", "thm:surj")
def _ts2(ctx, m, v):
    bad = _thm_surj_pre(ctx, m, v)
    if bad:
        return Status.Fail, bad
    res = hn.surjectivity_inequality(ctx, m, v)
    return _st(res.cond_ii), f"margin={res.lhs_margin}", {"margin": res.lhs_margin}


SURJ_ROUTES = {
    "special-(7,2)": ("injectivity", "special-(7,2): 2-sharp",
                      "special-(7,2): chain > hbar+chi-2(r+s)", "special-(7,2): z1+1 not a vertex"),
    "thm_surj2": ("injectivity", "thm_surj2: g < 2k and g != k", "thm_surj2: g < 2k~ and g != k~",
                  "thm_surj2: k or k~ does not divide g+1", "thm_surj2: polygon estimate"),
    "cor:surj2": ("injectivity", "cor:surj2: g >= 4r^2 + 1"),
    "thm:surj": ("injectivity", "thm:surj (i)", "thm:surj (ii)"),
}


def _run_routes(ctx, m, v, routes, label) -> CriterionReport:
    """First passing route wins; otherwise every attempted route is listed."""
    attempted = []
    verdicts = []
    for name, conds in routes:
        evaluated = tuple(evaluate(c, ctx, m, v) for c in conds)
        verdict = _combine(evaluated)
        route = label(name, evaluated)
        if verdict is Verdict.Pass:
            return CriterionReport((ctx.g, m, v), Verdict.Pass, route, evaluated)
        attempted.extend(evaluated)
        verdicts.append(verdict)
    overall = Verdict.Inconclusive if Verdict.Inconclusive in verdicts else Verdict.Fail
    names = " | ".join(n for n, _ in routes)
    return CriterionReport((ctx.g, m, v), overall, names or "none", tuple(attempted))


def _surj_label(name, evaluated):
    if name == "thm_surj2":
        est = evaluated[-1]
        if est.status is Status.Pass:
            return f"thm_surj2 ({est.witness.split(':')[0]})"
    return name


def check_surjectivity(ctx: SurfaceContext, m: int, v) -> CriterionReport:
    v = MukaiVector(*v)
    routes = []
    if (ctx.g, m, v) == SPECIAL_INPUT:
        routes.append("special-(7,2)")
    if _family_k(ctx, v) is not None:
        routes.append("thm_surj2")
    routes += ["cor:surj2", "thm:surj"]
    return _run_routes(ctx, m, v, [(r, SURJ_ROUTES[r]) for r in routes], _surj_label)


@_condition("surjectivity", "thm:surj/cor:surj2/thm_surj2")
def _surj_all(ctx, m, v):
    rep = check_surjectivity(ctx, m, v)
    return Status(rep.verdict.value), rep.route


# isomorphism

A_ANCHOR = "new-region-K3"


def _route_a_k(v) -> Optional[int]:
    if v.c != 0 and v.s % v.c == 0:
        return v.s // v.c
    return None


@_condition("A: primitive", A_ANCHOR)
def _a_prim(ctx, m, v):
    return _st(is_primitive(v)), str(v)


@_condition("A: v^2 = 0", A_ANCHOR)
def _a_sq(ctx, m, v):
    sq = mukai_square(ctx, v)
    return _st(sq == 0), f"v^2={sq}"


@_condition("A: gcd(r,c) = 1", A_ANCHOR)
def _a_gcd(ctx, m, v):
    return _st(_gcd_ok(v)), f"gcd={math.gcd(v.r, v.c)}"


@_condition("A: s = ck", A_ANCHOR)
def _a_ck(ctx, m, v):
    k = _route_a_k(v)
    return _st(k is not None), f"k={k}"


@_condition("A: g > 2", A_ANCHOR)
def _a_g(ctx, m, v):
    return _st(ctx.g > 2), f"g={ctx.g}"


@_condition("A: r | g-1", A_ANCHOR)
def _a_rdiv(ctx, m, v):
    return _st(v.r != 0 and (ctx.g - 1) % v.r == 0), f"r={v.r}, g-1={ctx.g - 1}"


@_condition("A: k does not divide g", A_ANCHOR)
def _a_kg(ctx, m, v):
    k = _route_a_k(v)
    if not k:
        return Status.Fail, "k undefined"
    return _st(ctx.g % k != 0), f"k={k}"


@_condition("A: 1 < k <= 3g-3", A_ANCHOR)
def _a_krange(ctx, m, v):
    k = _route_a_k(v)
    if k is None:
        return Status.Fail, "k undefined"
    return _st(1 < k <= 3 * ctx.g - 3), f"k={k}, 3g-3={3 * ctx.g - 3}"


@_condition("A: m > 1 + ck/(r(k-1))", A_ANCHOR)
def _a_m(ctx, m, v):
    k = _route_a_k(v)
    if k is None or k <= 1 or v.r == 0:
        return Status.Fail, "needs k > 1"
    bound = 1 + Fraction(v.c * k, v.r * (k - 1))
    return _st(m > bound), f"m={m}, bound={bound}"


def route_a_roots(ctx: SurfaceContext, k: int) -> list:
    """Roots (r', c', s') with r', c' > 0 and kc' < (k-1)r' < kc' + k/((g-1)c')."""
    g1 = ctx.g - 1
    out = []
    if k <= 1:
        return out
    cp = 1
    # past c' = k/(g-1) the window is shorter than one step of (k-1)r'
    while cp * g1 < k or cp == 1:
        n = g1 * cp * cp + 1
        for rp in divisors(n):
            lhs = (k - 1) * rp
            if k * cp < lhs and (lhs - k * cp) * g1 * cp < k:
                out.append(MukaiVector(rp, cp, n // rp))
        cp += 1
    return out


@_condition("A: no root in the p1 trapezoid", f"{A_ANCHOR}/eq:root in region++")
def _a_roots(ctx, m, v):
    k = _route_a_k(v)
    if k is None or k <= 1:
        return Status.Fail, "needs k > 1"
    roots = route_a_roots(ctx, k)
    return _st(not roots), "none" if not roots else "roots: " + ", ".join(map(str, roots))


B_ANCHOR = "thm_isomorphism HK"


@_condition("B: v^2 >= 0", B_ANCHOR)
def _b_sq(ctx, m, v):
    sq = mukai_square(ctx, v)
    return _st(sq >= 0), f"v^2={sq}"


@_condition("B: global sections", f"{B_ANCHOR}/eq:global section estimate+")
def _b_h0(ctx, m, v):
    lhs = (v.r - v.s) ** 2 + (2 * ctx.g + 2) * v.c ** 2
    top = v.r + v.s + 2
    return _st(top > 0 and lhs < top * top), f"(r-s)^2+(2g+2)c^2={lhs}, (r+s+2)^2={top * top}"


@_condition("thm:iso (iv)", "thm:iso")
def _iso_iv(ctx, m, v):
    sq = mukai_square(ctx, v)
    first = 2 * v.s > sq + 2 * v.c * v.c
    second = 2 * v.s > sq + 2 and math.gcd(v.c, v.s) == 1
    return _st(first or second), f"2s={2 * v.s}, v^2={sq}"


@_condition("C: h0(E) = r+s", "thm:iso")
def _c_h0(ctx, m, v):
    return Status.Assumed, "not checkable numerically"


@_condition("C: no wall for v(-m) and v_K", "thm:iso")
def _c_walls(ctx, m, v):
    sigma = solve_gamma_window(ctx, m, v)
    if sigma is None:
        return Status.Inconclusive, "no point of the window found in Gamma"
    dv = derived_vectors(ctx, m, v)
    seg = Segment(ORIGIN, sigma, include_a=False)
    statuses = []
    for vec in (dv.vm, dv.vk):
        verdict = admits_no_wall(ctx, OmegaQuery(vec, seg))
        statuses.append(verdict.status)
    witness = f"sigma=({sigma.x},{sigma.y}): " + ", ".join(s.value for s in statuses)
    # candidates come from the largest component, so they never refute on their own
    ok = all(s is WallStatus.NoWall for s in statuses)
    return (Status.Pass if ok else Status.Inconclusive), witness


ISO_ROUTES = {
    "A: new-region-K3": ("injectivity", "A: primitive", "A: v^2 = 0", "A: gcd(r,c) = 1", "A: s = ck",
                         "A: g > 2", "A: r | g-1", "A: k does not divide g", "A: 1 < k <= 3g-3",
                         "A: m > 1 + ck/(r(k-1))", "A: no root in the p1 trapezoid", "surjectivity"),
    "B: thm_isomorphism HK": ("injectivity", "B: v^2 >= 0", "cor:surj2: g >= 4r^2 + 1",
                              "B: global sections", "thm:iso (iv)"),
    "C: thm:iso": ("injectivity", "surjectivity", "C: h0(E) = r+s",
                   "C: no wall for v(-m) and v_K", "thm:iso (iv)"),
}


def check_isomorphism(ctx: SurfaceContext, m: int, v) -> CriterionReport:
    v = MukaiVector(*v)
    routes = [(n, c) for n, c in ISO_ROUTES.items()]
    return _run_routes(ctx, m, v, routes, lambda name, _: name)


@dataclass(frozen=True)
class PipelineReport:
    input: tuple
    verdict: Verdict
    route: str
    stages: dict = field(default_factory=dict)


def check_pipeline(ctx: SurfaceContext, m: int, v) -> PipelineReport:
    v = MukaiVector(*v)
    stages = {
        "injectivity": check_injectivity(ctx, m, v),
        "surjectivity": check_surjectivity(ctx, m, v),
        "isomorphism": check_isomorphism(ctx, m, v),
    }
    verdicts = [r.verdict for r in stages.values()]
    if all(x is Verdict.Pass for x in verdicts):
        verdict = Verdict.Pass
    elif Verdict.Fail in verdicts:
        verdict = Verdict.Fail
    else:
        verdict = Verdict.Inconclusive
    return PipelineReport((ctx.g, m, v), verdict, stages["surjectivity"].route, stages)


# the Gamma window between v(-m) and v_K

def solve_gamma_window(ctx: SurfaceContext, m: int, v):
    """A point of the open segment between the projections of v(-m) and v_K inside Gamma."""
    v = MukaiVector(*v)
    dv = derived_vectors(ctx, m, v)
    a, b = dv.vm, dv.vk
    if a.c == 0:
        return None
    g = ctx.g

    def coeffs(i, j):
        # (a_i + t (b_i - a_i)) * (a_j + t (b_j - a_j)) as t^2, t, 1
        di, dj = b[i] - a[i], b[j] - a[j]
        return (di * dj, a[i] * dj + a[j] * di, a[i] * a[j])

    rs = coeffs(0, 2)
    cc = coeffs(1, 1)
    qa, qb, qc = (rs[i] - g * cc[i] for i in range(3))

    def inside(t: Fraction) -> bool:
        vt = [a[i] + t * (b[i] - a[i]) for i in range(3)]
        if vt[2] <= 0 or vt[0] <= 0:
            return False
        p = project(vt)
        return region_membership(ctx, p, Region.Gamma)

    candidates = []
    if qa == 0:
        if qb != 0:
            candidates.append(Fraction(-qc, qb))
    else:
        disc = qb * qb - 4 * qa * qc
        if disc <= 0:
            return None
        with localcontext() as dctx:
            dctx.prec = 60
            root = Decimal(disc).sqrt()
            candidates = sorted(Fraction((Decimal(-qb) + sgn * root) / Decimal(2 * qa)) for sgn in (-1, 1))
    # sign changes of s(t) and r(t) are exact breakpoints too
    for i in (0, 2):
        if b[i] != a[i]:
            candidates.append(Fraction(-a[i], b[i] - a[i]))
    edges = sorted({Fraction(0), Fraction(1), *[t for t in candidates if 0 < t < 1]})
    for lo, hi in zip(edges, edges[1:]):
        # every test is constant on a piece, up to the approximate quadratic roots
        for t in (simplest_between(lo, hi), (lo + hi) / 2):
            if inside(t):
                return project([a[i] + t * (b[i] - a[i]) for i in range(3)])
    return None


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The fraction with least denominator in the open interval (lo, hi)."""
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl + 1 < hi:
        return Fraction(fl + 1)
    # fl <= lo < hi <= fl + 1: continue on the reciprocals of the fractional parts
    if lo == fl:
        return fl + Fraction(1, math.floor(1 / (hi - fl)) + 1)
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


# vector suggestion

TABLE_ROWS = {3: (5, 5), 4: (5, 4), 5: (3, 3), 6: (4, 3), 7: (5, 3)}


def table_k(g: int) -> Optional[tuple[int, int]]:
    """(k, least m) for the (g-1, k, k^2) choice, or None when g < 3."""
    if g in TABLE_ROWS:
        return TABLE_ROWS[g]
    if g >= 8:
        k = g // 2 + 1
        while math.gcd(g - 1, k) != 1:
            k += 1
        return k, 2
    return None


def suggest_vector(g: int, m: int):
    if g < 2 or m < 1:
        raise ValueError("needs g >= 2 and m >= 1")
    if m == 1 or g < 3:
        return None
    ctx = SurfaceContext(g)
    if (g, m) == (7, 2):
        v, route = SPECIAL_INPUT[2], "special"
    else:
        row = table_k(g)
        if row is None or m < row[1]:
            return None
        v, route = hn.family_vector(g, row[0]), "table1"
    if check_pipeline(ctx, m, v).verdict is not Verdict.Pass:
        return None
    return v, route


def family_scan(g: int, m: int) -> list[int]:
    """Every k in (0, 3g-3] giving a primitive (g-1, k, k^2) that passes the family criterion."""
    if g < 3:
        return []
    ctx = SurfaceContext(g)
    return [k for k in range(1, 3 * g - 2)
            if math.gcd(g - 1, k) == 1 and hn.special_surj_check(ctx, m, k).holds]


# hyper-Kaehler vectors

@dataclass(frozen=True)
class HKVector:
    p: int
    c: int
    v: MukaiVector


def find_hk_vector(n: int, g: int) -> Optional[HKVector]:
    """First prime p with n+1 < p < sqrt(g-1)/2 making (g-1)n a square mod p, least c."""
    if n < 1 or g < 2:
        raise ValueError("needs n >= 1 and g >= 2")
    ctx = SurfaceContext(g)
    g1 = g - 1
    p = n + 2
    while 4 * p * p < g1:
        if is_prime(p) and p > 2 and jacobi_symbol(g1 * n, p) == 1:
            c = next(c for c in range(1, p) if (c * c * g1 - n) % p == 0)
            v = MukaiVector(p, c, (c * c * g1 - n) // p)
            if (mukai_square(ctx, v) == 2 * n and is_primitive(v)
                    and math.gcd(p, c) == 1 and g >= 4 * p * p + 1):
                return HKVector(p, c, v)
        p += 1
    return None


# grid scan

@dataclass(frozen=True)
class ScanRow:
    g: int
    m: int
    v: Optional[MukaiVector]
    route: str
    inj: str
    surj: str
    iso: str


def scan(g_range, m_range) -> list[ScanRow]:
    rows = []
    for g in g_range:
        for m in m_range:
            found = suggest_vector(g, m) if g >= 2 and m >= 1 else None
            if found is None:
                rows.append(ScanRow(g, m, None, "none", "-", "-", "-"))
                continue
            v, route = found
            rep = check_pipeline(SurfaceContext(g), m, v)
            st = rep.stages
            rows.append(ScanRow(g, m, v, f"{route}: {rep.route}", st["injectivity"].verdict.value,
                                st["surjectivity"].verdict.value, st["isomorphism"].verdict.value))
    return rows
