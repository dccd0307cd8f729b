"""Destabilising regions and their lattice points.

For a Mukai vector v and a stability condition sigma, the line through sigma
and the projection of v meets the parabola in two points.  Their isotropic
lifts split v as ``v = plus + minus``; the parallelogram O, plus, v, minus
(cut by the two hyperboloids ``u^2 >= -2`` and ``(u - v)^2 >= -2``) is the
destabilising region.  An integer point in the half on the ``plus`` side
witnesses a wall through sigma.

The parabola intersections are used as the component endpoints.  That is
the largest possible component, so an empty search soundly certifies that
there is no wall, while points found are reported as candidates only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .exactnum import RadicalExpr, Sign, radical_sign
from .geometry import (
    ORIGIN,
    PlanePoint,
    Segment,
    cross,
    lift,
    point,
    project,
    root_on_direction,
)
from .lattice import (
    DegenerateInput,
    MukaiVector,
    SurfaceContext,
    UsageError,
    divisors,
    gcd3,
    mukai_pairing,
    mukai_square,
)


class DegenerateParallelogram(ValueError):
    """The projection of v lies on the parabola, so the parallelogram collapses."""


class R3Point(NamedTuple):
    x: RadicalExpr
    y: RadicalExpr
    z: RadicalExpr


@dataclass(frozen=True)
class SigmaSplit:
    plus: R3Point
    minus: R3Point
    endpoints: tuple  # parabola points under plus and minus, as (x, y) radical pairs


def _r3(vec) -> R3Point:
    return R3Point(*(RadicalExpr.coerce(t) for t in vec))


def v_sigma_plus(ctx: SurfaceContext, v, sigma) -> SigmaSplit:
    v = MukaiVector(*v)
    sq = mukai_square(ctx, v)
    if sq == 0:
        raise DegenerateParallelogram(f"{v} has square zero; use the root-based path")
    if sq < 0:
        raise DegenerateInput(f"{v} has negative square {sq}")
    a = lift(point(*sigma))
    a_sq = mukai_square(ctx, a)
    if a_sq >= 0:
        raise DegenerateInput(f"sigma={tuple(sigma)} is not inside the parabola")
    p = mukai_pairing(ctx, a, v)
    disc = p * p - a_sq * sq  # > 0 since a_sq < 0 < sq
    root = RadicalExpr.sqrt(disc)
    alphas = ((root - p) / a_sq, (-root - p) / a_sq)
    w1, w2 = ([al * a[i] + v[i] for i in range(3)] for al in alphas)
    shift = root * Fraction(p, 2 * disc)
    t = shift + Fraction(1, 2)
    u = Fraction(1, 2) - shift
    plus = [t * w for w in w1]
    minus = [u * w for w in w2]
    ends = [w1, w2]
    if radical_sign(plus[0]) is Sign.Negative or radical_sign(plus[2]) is Sign.Negative:
        plus, minus = minus, plus
        ends.reverse()
    endpoints = tuple((w[0] / w[2], w[1] / w[2]) for w in ends)
    return SigmaSplit(_r3(plus), _r3(minus), endpoints)


class OmegaClass(enum.Enum):
    InOmegaPlus = "plus"
    InOmegaLine = "line"
    InOmegaMinus = "minus"
    Outside = "outside"


def _is_multiple(u, v) -> Optional[Fraction]:
    """lambda with u = lambda * v, or None."""
    if any(u[i] * v[j] != u[j] * v[i] for i in range(3) for j in range(i + 1, 3)):
        return None
    for i in range(3):
        if v[i]:
            return Fraction(u[i], v[i])
    return None


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def sigma_for(v, segment: Segment, u) -> Optional[PlanePoint]:
    """The point of ``segment`` on the line through the projections of v and u."""
    a, b = segment.a, segment.b
    base = (a.x, a.y, Fraction(1))
    step = (b.x - a.x, b.y - a.y, Fraction(0))
    d0 = _det3(u, v, base)
    d1 = _det3(u, v, step)
    if d1 == 0:
        if d0 != 0:
            return None
        # the whole segment lies on that line; any interior point will do
        return segment.at(Fraction(1, 2))
    t = -d0 / d1
    return segment.at(t) if segment.contains_param(t) else None


def _in_plus_triangle(u, v, plus: R3Point) -> bool:
    """u = alpha*v + beta*plus with beta > 0, alpha >= 0, alpha + beta <= 1."""
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = v[i] * plus[j] - v[j] * plus[i]
        if not det.is_zero():
            break
    else:
        return False
    inv = det.reciprocal()
    alpha = (u[i] * plus[j] - u[j] * plus[i]) * inv
    beta = (v[i] * u[j] - v[j] * u[i]) * inv
    k = 3 - i - j
    if alpha * v[k] + beta * plus[k] != RadicalExpr.coerce(u[k]):
        return False
    return (radical_sign(beta) is Sign.Positive
            and radical_sign(alpha) is not Sign.Negative
            and radical_sign(alpha + beta - 1) is not Sign.Positive)


def omega_membership(ctx: SurfaceContext, v, segment: Segment, u) -> OmegaClass:
    v = MukaiVector(*v)
    u = MukaiVector(*u)
    if u == (0, 0, 0):
        raise UsageError("u must be nonzero")
    lam = _is_multiple(u, v)
    if lam is not None:
        return OmegaClass.InOmegaLine if 0 < lam < 1 else OmegaClass.Outside
    sigma = sigma_for(v, segment, u)
    if sigma is None:
        return OmegaClass.Outside
    split = v_sigma_plus(ctx, v, sigma)
    if mukai_square(ctx, u) < -2 or mukai_square(ctx, u - v) < -2:
        return OmegaClass.Outside
    if _in_plus_triangle(u, v, split.plus):
        return OmegaClass.InOmegaPlus
    if _in_plus_triangle(v - u, v, split.plus):
        return OmegaClass.InOmegaMinus
    return OmegaClass.Outside


class WallStatus(enum.Enum):
    NoWall = "no-wall"
    WallCandidates = "wall-candidates"
    Inconclusive = "inconclusive"


@dataclass(frozen=True)
class WallVerdict:
    status: WallStatus
    witnesses: tuple = ()
    note: str = ""

    def __post_init__(self):
        if (self.status is WallStatus.WallCandidates) != bool(self.witnesses):
            raise ValueError("witnesses must be present exactly for wall candidates")


@dataclass(frozen=True)
class Bounds:
    y_max: Optional[int] = None
    x_max: Optional[int] = None
    z_max: Optional[int] = None
    root_bound: Optional[int] = None

    @classmethod
    def default_for(cls, v) -> "Bounds":
        c = abs(v[1])
        return cls(y_max=c, root_bound=64 * max(c, 1))

    def filled(self, v) -> "Bounds":
        d = Bounds.default_for(v)
        return Bounds(
            y_max=d.y_max if self.y_max is None else self.y_max,
            x_max=self.x_max,
            z_max=self.z_max,
            root_bound=d.root_bound if self.root_bound is None else self.root_bound,
        )

    def doubled(self, v) -> "Bounds":
        f = self.filled(v)
        return Bounds(
            y_max=2 * f.y_max,
            x_max=None if f.x_max is None else 2 * f.x_max,
            z_max=None if f.z_max is None else 2 * f.z_max,
            root_bound=2 * f.root_bound,
        )


@dataclass(frozen=True)
class OmegaQuery:
    v: MukaiVector
    segment: Segment
    bounds: Bounds = field(default_factory=Bounds)


def in_fan(apex: PlanePoint, segment: Segment, p) -> bool:
    """Membership in the union of half-open segments (apex, q] over q in segment."""
    p = point(*p)
    if p == apex:
        return False
    ax, ay = segment.a.x - apex.x, segment.a.y - apex.y
    dx, dy = segment.b.x - segment.a.x, segment.b.y - segment.a.y
    px, py = p.x - apex.x, p.y - apex.y
    det = ax * dy - ay * dx
    if det == 0:
        # apex on the segment's line: the fan is part of that line
        if px * dy - py * dx != 0:
            return False
        # parametrise along the line from apex
        ts = []
        for q, inc in ((segment.a, segment.include_a), (segment.b, segment.include_b)):
            qx, qy = q.x - apex.x, q.y - apex.y
            ts.append((qx if dx else qy, inc))
        pt = px if dx else py
        lo, hi = sorted(ts)
        if lo[0] <= 0 <= hi[0]:
            # apex inside the segment: everything on the segment except the apex
            return (lo[0] < pt < hi[0] or (pt == lo[0] and lo[1]) or (pt == hi[0] and hi[1]))
        same_side = [t for t in ts if t[0] * pt > 0]
        if not same_side:
            return False
        far = max(same_side, key=lambda t: abs(t[0]))
        if abs(pt) < abs(far[0]):
            return True
        return pt == far[0] and far[1]
    # p - apex = lam*(a - apex) + mu*(b - a); q = a + (mu/lam)(b - a)
    lam = (px * dy - py * dx) / det
    mu = (ax * py - ay * px) / det
    if lam <= 0 or lam > 1:
        return False
    return segment.contains_param(mu / lam)


def _roots_with_c(ctx: SurfaceContext, cp: int):
    n = (ctx.g - 1) * cp * cp + 1
    for d in divisors(n):
        yield MukaiVector(d, cp, n // d)


def _icbrt_ceil(q: Fraction) -> int:
    n = max(1, int(round(float(q) ** (1 / 3))))
    while n**3 < q:
        n += 1
    while n > 1 and (n - 1) ** 3 >= q:
        n -= 1
    return n


def _root_search_limit(ctx: SurfaceContext, v: MukaiVector, segment: Segment) -> Optional[int]:
    """An upper bound for |c'| of roots projecting into the fan, or None.

    ``v`` has square zero and s > 0, so its projection sits on the parabola.
    Pairing with v is a negative integer for every root with s' > 0, which
    pins roots near the apex to have bounded s'; the fan's distance to the
    parabola grows at least linearly in |y - y_v| away from the apex.
    """
    g1 = ctx.g - 1
    apex = project(v)
    r, c, s = v
    # the classical trapezoid: fan below the apex height and right of the ray o->apex
    if r > 0 and c != 0:
        flip = -1 if c < 0 else 1
        cc = c * flip
        ok = True
        for q, inc in ((segment.a, segment.include_a), (segment.b, segment.include_b)):
            qy = q.y * flip
            side = cc * q.x - r * qy
            if qy < 0 or qy >= Fraction(cc, s) or side < 0 or (side == 0 and inc and q != ORIGIN):
                ok = False
        if ok:
            return max(1, math.ceil(Fraction(cc * cc, s)))
    verts = [segment.a, segment.b]
    gaps = [q.x - g1 * q.y * q.y for q in verts]
    poly = [apex]
    for q, gap in zip(verts, gaps):
        if gap <= 0 and q != ORIGIN:
            return None
    if ORIGIN in verts:
        others = [q for q in verts if q != ORIGIN] + [apex]
        if any(q.x <= 0 for q in others):
            return None
        slope = max(abs(q.y / q.x) for q in others)
        x0 = 1 / (g1 * slope * slope + 1)
        tri = [apex, segment.a, segment.b]
        poly = _clip_left(tri, x0)
    else:
        poly = [apex, segment.a, segment.b]
    kappa = None
    for w in poly:
        if w == apex:
            continue
        gap = w.x - g1 * w.y * w.y
        if gap <= 0:
            return None
        dy = abs(w.y - apex.y)
        if dy:
            ratio = gap / dy
            kappa = ratio if kappa is None else min(kappa, ratio)
    s_max = 2 * s
    if kappa is not None:
        s_max = max(s_max, _icbrt_ceil(Fraction(2 * g1 * s) / (kappa * kappa)))
    x_max = max(w.x for w in poly)
    bound_sq = (x_max * s_max * s_max - 1) / g1
    return math.isqrt(math.floor(bound_sq)) if bound_sq > 0 else 0


def _clip_left(poly, x0):
    """Clip a convex polygon to the half-plane x >= x0."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        pin, qin = p.x >= x0, q.x >= x0
        if pin:
            out.append(p)
        if pin != qin:
            t = (x0 - p.x) / (q.x - p.x)
            out.append(PlanePoint(x0, p.y + t * (q.y - p.y)))
    return out


def _square_zero_no_wall(ctx, v, segment, bounds, strict) -> WallVerdict:
    if v.s == 0:
        return WallVerdict(WallStatus.Inconclusive, note="v has no projection")
    if v.s < 0:
        v = -v
    apex = project(v)
    limit = _root_search_limit(ctx, v, segment)
    search = bounds.root_bound if limit is None else min(limit, bounds.root_bound)
    found = []
    for cp in range(-search, search + 1):
        for delta in _roots_with_c(ctx, cp):
            if in_fan(apex, segment, project(delta)):
                found.append(delta)
    line_points = _line_points(v) if not strict else []
    witnesses = tuple(found) + tuple(line_points)
    if witnesses:
        return WallVerdict(WallStatus.WallCandidates, witnesses,
                           note=f"roots projecting into the triangle (|c'| <= {search})")
    if limit is None or limit > bounds.root_bound:
        return WallVerdict(WallStatus.Inconclusive,
                           note=f"no root found with |c'| <= {bounds.root_bound}, "
                                "but the search is not provably complete")
    return WallVerdict(WallStatus.NoWall, note=f"root search complete up to |c'| <= {limit}")


def _line_points(v):
    d = gcd3(*v)
    step = MukaiVector(v[0] // d, v[1] // d, v[2] // d) if d else v
    return [step.scale(j) for j in range(1, d)]


def _positive_no_wall(ctx, v, segment, bounds, strict) -> WallVerdict:
    flip = 1
    if v.c < 0:
        flip = -1
    r, c, s = v.r, v.c * flip, v.s
    if not (r > 0 and c > 0 and s > 0):
        return WallVerdict(WallStatus.Inconclusive, note="enumeration box needs r, c, s > 0")
    if segment.a.y != 0 or segment.b.y != 0 or min(segment.a.x, segment.b.x) < 0:
        return WallVerdict(WallStatus.Inconclusive,
                           note="enumeration box is derived for segments on the positive x-axis")
    for q, inc in ((segment.a, segment.include_a), (segment.b, segment.include_b)):
        if q.x == 0 and inc:
            return WallVerdict(WallStatus.Inconclusive, note="segment must exclude the origin")
    g1 = ctx.g - 1
    y_top = min(c, bounds.y_max)
    complete = bounds.y_max >= c
    found = []
    for y in range(1, y_top + 1):
        cap = g1 * y * y + 1
        x_lo = -((-r * y) // c)
        x_hi = (cap * c) // (s * y)
        z_lo = -((-s * y) // c)
        z_hi = (cap * c) // (r * y)
        if bounds.x_max is not None and bounds.x_max < x_hi:
            x_hi, complete = bounds.x_max, False
        if bounds.z_max is not None and bounds.z_max < z_hi:
            z_hi, complete = bounds.z_max, False
        for x in range(max(x_lo, 0), x_hi + 1):
            for z in range(max(z_lo, 0), z_hi + 1):
                if x * z > cap:
                    break
                u = MukaiVector(x, y * flip, z)
                if omega_membership(ctx, v, segment, u) is OmegaClass.InOmegaPlus:
                    found.append(u)
    witnesses = list(found)
    if not strict:
        witnesses += _line_points(v) + [v - u for u in found]
    if witnesses:
        return WallVerdict(WallStatus.WallCandidates, tuple(witnesses),
                           note="lattice points in the destabilising region")
    if not complete:
        return WallVerdict(WallStatus.Inconclusive, note="enumeration bounds below the derived box")
    return WallVerdict(WallStatus.NoWall, note=f"enumerated 0 < y <= {c}")


def admits_no_wall(ctx: SurfaceContext, q: OmegaQuery, strict: bool = True) -> WallVerdict:
    """Search for lattice points witnessing walls along ``q.segment``.

    ``strict`` looks at the strictly destabilising half only; otherwise the
    whole region including the open diagonal is searched.
    """
    v = MukaiVector(*q.v)
    bounds = q.bounds.filled(v)
    sq = mukai_square(ctx, v)
    if sq < 0:
        return WallVerdict(WallStatus.Inconclusive, note=f"negative square {sq} is not handled")
    if sq == 0:
        return _square_zero_no_wall(ctx, v, q.segment, bounds, strict)
    return _positive_no_wall(ctx, v, q.segment, bounds, strict)


def roots_in_trapezoid(ctx: SurfaceContext, v, c_max: int) -> list:
    """Roots with positive entries projecting strictly inside the trapezoid
    below the segment from the origin to the projection of v."""
    r, c, s = v
    if c == 0:
        return []
    if not (r > 0 and c > 0 and s > 0):
        raise UsageError("roots_in_trapezoid needs r, c, s > 0")
    out = []
    for cp in range(1, c_max + 1):
        for delta in _roots_with_c(ctx, cp):
            if cp * r < c * delta.r and cp * s < c * delta.s:
                out.append(delta)
    return out


def roots_near_direction(ctx: SurfaceContext, r0: int, c0: int):
    """Convenience wrapper used by the plotting code."""
    return root_on_direction(ctx, r0, c0)
