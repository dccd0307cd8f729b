"""Exact planar geometry of the stability plane.

A Mukai vector (r, c, s) with s != 0 projects to (r/s, c/s).  Stability
conditions live to the right of the parabola x = (g-1) y^2, minus the
segments cut out by roots (vectors of square -2).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .lattice import MukaiVector, SurfaceContext, UsageError


class ProjectionUndefined(ValueError):
    pass


class PlanePoint(NamedTuple):
    x: Fraction
    y: Fraction

    def __str__(self):
        return f"({self.x}, {self.y})"


def point(x, y) -> PlanePoint:
    return PlanePoint(Fraction(x), Fraction(y))


ORIGIN = point(0, 0)
AXIS_ROOT = point(1, 0)


@dataclass(frozen=True)
class Segment:
    a: PlanePoint
    b: PlanePoint
    include_a: bool = True
    include_b: bool = True

    def __post_init__(self):
        if self.a == self.b:
            raise UsageError("segment endpoints must differ")

    def at(self, t: Fraction) -> PlanePoint:
        return PlanePoint(self.a.x + t * (self.b.x - self.a.x), self.a.y + t * (self.b.y - self.a.y))

    def contains_param(self, t: Fraction) -> bool:
        if t < 0 or t > 1:
            return False
        if t == 0:
            return self.include_a
        if t == 1:
            return self.include_b
        return True


def cross(o, a, b) -> Fraction:
    """z-component of (a - o) x (b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _sgn(q) -> int:
    return (q > 0) - (q < 0)


def _segments_cross(p1, p2, q1, q2) -> bool:
    d1, d2 = cross(q1, q2, p1), cross(q1, q2, p2)
    d3, d4 = cross(p1, p2, q1), cross(p1, p2, q2)
    if _sgn(d1) * _sgn(d2) < 0 and _sgn(d3) * _sgn(d4) < 0:
        return True

    def on(a, b, p):
        return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))

    return ((d1 == 0 and on(q1, q2, p1)) or (d2 == 0 and on(q1, q2, p2))
            or (d3 == 0 and on(p1, p2, q1)) or (d4 == 0 and on(p1, p2, q2)))


@dataclass(frozen=True)
class Polygon:
    """Simple polygon; vertices are stored counter-clockwise."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(point(*v) for v in self.vertices)
        if len(verts) >= 3:
            n = len(verts)
            for i in range(n):
                for j in range(i + 1, n):
                    if j == i + 1 or (i == 0 and j == n - 1):
                        continue
                    if _segments_cross(verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n]):
                        raise UsageError("polygon is not simple")
            if signed_area(verts) < 0:
                verts = tuple(reversed(verts))
        object.__setattr__(self, "vertices", verts)

    def __len__(self):
        return len(self.vertices)

    def contains(self, p, boundary: bool = True) -> bool:
        return point_in_polygon(self.vertices, p, boundary)


def signed_area(verts) -> Fraction:
    n = len(verts)
    return sum((verts[i][0] * verts[(i + 1) % n][1] - verts[(i + 1) % n][0] * verts[i][1]
                for i in range(n)), Fraction(0)) / 2


def point_in_polygon(verts, p, boundary: bool = True) -> bool:
    """Exact even-odd test; points on an edge count as inside iff ``boundary``."""
    n = len(verts)
    if n == 0:
        return False
    if n == 1:
        return boundary and tuple(verts[0]) == tuple(p)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return boundary
    if n == 2:
        return False
    inside = False
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if (a[1] > p[1]) != (b[1] > p[1]):
            x_at = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if p[0] < x_at:
                inside = not inside
    return inside


def convex_hull(points) -> list:
    """Counter-clockwise hull without collinear vertices (monotone chain)."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return [point(*p) for p in pts]
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return [point(*p) for p in lower[:-1] + upper[:-1]]


def project(v) -> PlanePoint:
    r, c, s = v
    if s == 0:
        raise ProjectionUndefined(f"{tuple(v)} has s = 0 and no projection")
    return PlanePoint(Fraction(r, s), Fraction(c, s))


def lift(p: PlanePoint) -> tuple:
    """Primitive integer vector projecting to p (with positive last entry)."""
    den = math.lcm(p.x.denominator, p.y.denominator)
    r, c = int(p.x * den), int(p.y * den)
    g = math.gcd(math.gcd(r, c), den)
    return (r // g, c // g, den // g)


def root_on_direction(ctx: SurfaceContext, r0: int, c0: int) -> Optional[MukaiVector]:
    """The unique root on the line r0*y = c0*x through the origin, if any."""
    if r0 <= 0:
        raise UsageError("direction needs r0 > 0")
    if math.gcd(r0, c0) != 1:
        raise UsageError(f"direction ({r0}, {c0}) is not coprime")
    n = c0 * c0 * (ctx.g - 1) + 1
    if n % r0:
        return None
    return MukaiVector(r0, c0, n // r0)


class Region(enum.Enum):
    ParabolaInterior = "parabola-interior"
    Gamma = "gamma"
    V = "V"


def _parabola_gap(ctx: SurfaceContext, p) -> Fraction:
    return p[0] - (ctx.g - 1) * p[1] * p[1]


def region_membership(ctx: SurfaceContext, p, region: Region) -> bool:
    p = point(*p)
    if region is Region.ParabolaInterior:
        return _parabola_gap(ctx, p) > 0
    if region is Region.Gamma:
        if p.x <= ctx.g * p.y * p.y:
            return False
        return p.y != 0 or p.x * p.x * ctx.h2 < 2
    if region is not Region.V:
        raise UsageError(f"unknown region {region!r}")
    if p.x <= 0:
        raise UsageError("membership in V is only decided for x > 0")
    if p.y == 0:
        return p.x < 1
    if _parabola_gap(ctx, p) <= 0:
        return False
    ratio = p.y / p.x
    r0, c0 = ratio.denominator, ratio.numerator
    delta = root_on_direction(ctx, r0, c0)
    if delta is None:
        return True
    # p = t*(r0, c0); the root sits at t = 1/s and the removed piece runs
    # outward from it to the far parabola point
    return p.x / r0 < Fraction(1, delta.s)


def removed_root_segment(ctx: SurfaceContext, r0: int, c0: int) -> Optional[Segment]:
    """The excluded piece of the ray through (r0, c0): from the root outward."""
    delta = root_on_direction(ctx, r0, c0)
    if delta is None or c0 == 0:
        return None
    near = project(delta)
    far = point(Fraction(r0 * r0, (ctx.g - 1) * c0 * c0), Fraction(r0, (ctx.g - 1) * c0))
    return Segment(far, near, include_a=False, include_b=True)


class Phase(enum.Enum):
    Less = -1
    Equal = 0
    Greater = 1


def _half_turn_key(a, b):
    """Orient ``a`` modulo a half turn so it lies clockwise of ``b``."""
    cr = b[0] * a[1] - b[1] * a[0]
    if cr > 0:
        return (-a[0], -a[1]), False
    if cr == 0:
        return a, True  # parallel: the angle is a full half turn
    return a, False


def phase_compare(ctx: SurfaceContext, sigma, u1, u2) -> Phase:
    """Order the phases of u1 and u2 at sigma.

    The phase increases with the angle measured from the direction
    sigma -> pi_u to the direction o -> sigma, taken modulo a half turn
    in (0, pi].  Only determinant and dot-product signs are used.
    """
    from .lattice import DegenerateInput

    sigma = point(*sigma)
    p1, p2 = project(u1), project(u2)
    if p1 == sigma or p2 == sigma:
        raise DegenerateInput("a projection coincides with sigma")
    if sigma == ORIGIN:
        raise DegenerateInput("sigma must differ from the origin")
    b = (sigma.x, sigma.y)
    a1 = (p1.x - sigma.x, p1.y - sigma.y)
    a2 = (p2.x - sigma.x, p2.y - sigma.y)
    if a1[0] * a2[1] - a1[1] * a2[0] == 0:
        return Phase.Equal
    k1, par1 = _half_turn_key(a1, b)
    k2, par2 = _half_turn_key(a2, b)
    if par1:
        return Phase.Greater
    if par2:
        return Phase.Less
    # both strictly clockwise of b: the more clockwise one has the larger angle
    turn = k2[0] * k1[1] - k2[1] * k1[0]
    return Phase.Less if turn > 0 else Phase.Greater


def is_convex(verts) -> bool:
    n = len(verts)
    if n < 3:
        return True
    signs = {_sgn(cross(verts[i], verts[(i + 1) % n], verts[(i + 2) % n])) for i in range(n)}
    return not ({1, -1} <= signs)


def _convex_row_span(verts, y):
    """Closed x-interval of a convex polygon on the horizontal line at height y."""
    xs = []
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if a.y == b.y == y:
            xs += [a.x, b.x]
        elif min(a.y, b.y) <= y <= max(a.y, b.y) and a.y != b.y:
            xs.append(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y))
    return (min(xs), max(xs)) if xs else None


def integer_points(poly: Polygon) -> list:
    verts = poly.vertices
    if not verts:
        return []
    xs = [v.x for v in verts]
    ys = [v.y for v in verts]
    pts = []
    convex = is_convex(verts)
    for y in range(math.ceil(min(ys)), math.floor(max(ys)) + 1):
        if convex:
            span = _convex_row_span(verts, y)
            if span:
                pts += [point(x, y) for x in range(math.ceil(span[0]), math.floor(span[1]) + 1)]
            continue
        for x in range(math.ceil(min(xs)), math.floor(max(xs)) + 1):
            if point_in_polygon(verts, (x, y), boundary=True):
                pts.append(point(x, y))
    return pts


def lattice_hull(poly: Polygon) -> Polygon:
    """Convex hull of the integer points inside or on ``poly``."""
    verts = poly.vertices
    if verts and is_convex(verts):
        # only the extreme points of each row can be hull vertices
        extremes = []
        for y in range(math.ceil(min(v.y for v in verts)), math.floor(max(v.y for v in verts)) + 1):
            span = _convex_row_span(verts, y)
            if span and math.ceil(span[0]) <= math.floor(span[1]):
                extremes += [(math.ceil(span[0]), y), (math.floor(span[1]), y)]
        return Polygon(tuple(convex_hull(extremes)))
    return Polygon(tuple(convex_hull(integer_points(poly))))
