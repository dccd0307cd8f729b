"""Harder-Narasimhan polygon metrics and the radical inequalities built on them.

Charges are written as plane points ``Z = (r - s, c)``.  Two length functions
bound global sections: ``ell`` for integer points and the norm ``znorm``,
which dominates ``ell`` off the real axis.  The model polygon of ``(m, v)``
has vertices 0, z1, z2; the surjectivity estimates compare chains of norms
along auxiliary points z1', z1^{+d}, z2'.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .exactnum import RadicalExpr, Sign, radical_floor, radical_sign
from .geometry import Polygon, lattice_hull
from .lattice import DegenerateInput, MukaiVector, SurfaceContext, UsageError


class ZPoint(NamedTuple):
    re: Fraction
    im: Fraction

    def __add__(self, other):
        return ZPoint(self.re + other[0], self.im + other[1])

    def __sub__(self, other):
        return ZPoint(self.re - other[0], self.im - other[1])

    def __str__(self):
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


def zpoint(re, im) -> ZPoint:
    return ZPoint(Fraction(re), Fraction(im))


def charge(v) -> ZPoint:
    """Central charge of a Mukai vector as a plane point."""
    return zpoint(v[0] - v[2], v[1])


def _as_int(q) -> int:
    q = Fraction(q)
    if q.denominator != 1:
        raise UsageError(f"{q} is not an integer")
    return q.numerator


def ell(ctx: SurfaceContext, z) -> RadicalExpr:
    x, y = _as_int(z[0]), _as_int(z[1])
    return RadicalExpr.sqrt(x * x + 4 * (ctx.g - 1) * y * y + 4 * math.gcd(x, y) ** 2)


def znorm(ctx: SurfaceContext, z) -> RadicalExpr:
    x, y = Fraction(z[0]), Fraction(z[1])
    return RadicalExpr.sqrt(x * x + 4 * ctx.g * y * y)


@dataclass(frozen=True)
class PolygonData:
    z1: ZPoint
    z2: ZPoint
    d: int
    z1p: ZPoint
    z2p: ZPoint
    chi: int
    hbar: RadicalExpr
    gamma: Fraction

    def z1_plus(self, d: Optional[int] = None) -> ZPoint:
        return self.z1 + (self.d if d is None else d, 0)


def polygon_data(ctx: SurfaceContext, m: int, v, d: int = 1) -> PolygonData:
    r, c, s = v
    if c <= 0:
        raise DegenerateInput("the model polygon needs c > 0")
    if m * r == c:
        raise DegenerateInput("the model polygon needs m*r != c")
    if d < 0:
        raise UsageError("d must be nonnegative")
    g1 = ctx.g - 1
    gamma = Fraction(m * r, c) - 1
    chi = m * g1 * (2 * c - m * r)
    z1 = zpoint(r - s, c)
    z1p = zpoint(Fraction(r - s) - Fraction(r - s, c), c - 1)
    z2p = zpoint(Fraction(r - s) - (r - gamma * gamma * s) / (gamma * c), c + 1)
    hbar = (RadicalExpr.sqrt((r + s - chi) ** 2 + 4 * (m * r - c) ** 2)
            + RadicalExpr.sqrt((r + s) ** 2 + 4 * c * c))
    return PolygonData(
        z1=z1,
        z2=zpoint(m * g1 * (m * r - 2 * c), m * r),
        d=d,
        z1p=z1p,
        z2p=z2p,
        chi=chi,
        hbar=hbar,
        gamma=gamma,
    )


def section_upper_bound(ctx: SurfaceContext, parts) -> int:
    """Sum of floor((ell(z) - re z) / 2) over the parts."""
    return sum(radical_floor((ell(ctx, z) - Fraction(z[0])) / 2) for z in parts)


def sharpness_value(ctx: SurfaceContext, m: int, v) -> Fraction:
    r, c, s = v
    if c <= 0:
        raise DegenerateInput("sharpness needs c > 0")
    gamma = Fraction(m * r, c) - 1
    if gamma <= 0:
        raise DegenerateInput("sharpness needs m*r > c")
    return Fraction(s - r, c) + (gamma * gamma * s - r) / (gamma * c)


def sharpness(ctx: SurfaceContext, m: int, v) -> int:
    """Largest d with the sharpness inequality at d.

    A negative return value means the inequality already fails at d = 0.
    """
    return math.floor(sharpness_value(ctx, m, v) / 2)


def sharp_chain(ctx: SurfaceContext, pd: PolygonData, d: int) -> RadicalExpr:
    """Norm chain through z1' and z2' towards z1^{+d}."""
    top = pd.z1_plus(d)
    return (znorm(ctx, pd.z1 - pd.z1p) - znorm(ctx, pd.z1p - top)
            + znorm(ctx, pd.z1 - pd.z2p) - znorm(ctx, pd.z2p - top))


def surjectivity_gap(ctx: SurfaceContext, pd: PolygonData, r: int, s: int) -> RadicalExpr:
    """hbar + chi - 2(r + s): the quantity every competitor must beat."""
    return pd.hbar + (pd.chi - 2 * (r + s))


@dataclass(frozen=True)
class SurjectivityInequality:
    holds: bool
    cond_i: bool
    cond_ii: bool
    lhs_margin: RadicalExpr
    value_i: Fraction


def surjectivity_inequality(ctx: SurfaceContext, m: int, v) -> SurjectivityInequality:
    r, c, s = v
    if c <= 0 or m * r <= c:
        raise UsageError("needs c > 0 and m*r > c")
    pd = polygon_data(ctx, m, v, 1)
    if r + s <= 0 or r + s - pd.chi <= 0:
        raise UsageError("needs r + s > 0 and r + s - chi > 0")
    value_i = Fraction(s - r, c) + Fraction(s - r - pd.chi, m * r - c)
    rhs = Fraction(2 * c * c, r + s) + Fraction(2 * (m * r - c) ** 2, r + s - pd.chi)
    margin = sharp_chain(ctx, pd, 1) - rhs
    cond_i = value_i >= 2
    cond_ii = radical_sign(margin) is not Sign.Negative
    return SurjectivityInequality(cond_i and cond_ii, cond_i, cond_ii, margin, value_i)


# the (g-1, k, k^2) family

def family_vector(g: int, k: int) -> MukaiVector:
    return MukaiVector(g - 1, k, k * k)


def family_bullets(g: int, m: int, k: int) -> dict:
    kt = m * (g - 1) - k
    return {
        "g<2k,g!=k": g < 2 * k and g != k,
        "g<2k~,g!=k~": g < 2 * kt and g != kt,
        "k|g+1 or k~|g+1 fails": (g + 1) % k != 0 or kt == 0 or (g + 1) % kt != 0,
    }


def hull_vertex_below(ctx: SurfaceContext, m: int, v, d: int) -> ZPoint:
    """Leftmost vertex of the integer hull of P(0, z1', z1^{+d}, z2', z2) on row c - 1."""
    pd = polygon_data(ctx, m, v, d)
    poly = Polygon((zpoint(0, 0), pd.z1p, pd.z1_plus(d), pd.z2p, pd.z2))
    hull = lattice_hull(poly)
    row = [p for p in hull.vertices if p.y == v[1] - 1]
    if not row:
        raise DegenerateInput("the integer hull has no vertex on row c - 1")
    p = min(row, key=lambda q: q.x)
    return zpoint(p.x, p.y)


def hull_chain(ctx: SurfaceContext, m: int, v, d: int) -> tuple[ZPoint, RadicalExpr]:
    """The hull-corrected estimate ||z1|| - ||z3|| - ||z3 - z1^{+d}|| + ||z1 - z2'|| - ||z2' - z1^{+d}||."""
    pd = polygon_data(ctx, m, v, d)
    z3 = hull_vertex_below(ctx, m, v, d)
    top = pd.z1_plus(d)
    value = (znorm(ctx, pd.z1) - znorm(ctx, z3) - znorm(ctx, z3 - top)
             + znorm(ctx, pd.z1 - pd.z2p) - znorm(ctx, pd.z2p - top))
    return z3, value


def est3_value(ctx: SurfaceContext, m: int, k: int) -> RadicalExpr:
    """Closed form of the d = 3 chain for v = (g-1, k, k^2)."""
    g = ctx.g
    kt = m * (g - 1) - k

    def f(j):
        big = Fraction(j * j - g + 1, j)
        return RadicalExpr.sqrt(big * big + 4 * g) - RadicalExpr.sqrt((big - 3) ** 2 + 4 * g)

    return f(k) + f(kt)


@dataclass(frozen=True)
class SpecialSurjResult:
    holds: bool
    route: str
    bullets: dict
    estimate: Optional[RadicalExpr] = None
    target: Optional[RadicalExpr] = None
    z3: Optional[ZPoint] = None


@lru_cache(maxsize=1024)
def special_surj_check(ctx: SurfaceContext, m: int, k: int) -> SpecialSurjResult:
    g = ctx.g
    if g < 3:
        raise UsageError("the (g-1, k, k^2) family needs g >= 3")
    if k <= 0 or math.gcd(g - 1, k) != 1:
        raise UsageError(f"(g-1, k, k^2) with g={g}, k={k} is not primitive")
    v = family_vector(g, k)
    bullets = family_bullets(g, m, k)
    if not all(bullets.values()):
        return SpecialSurjResult(False, "bullets fail", bullets)
    pd = polygon_data(ctx, m, v, 3)
    target = surjectivity_gap(ctx, pd, v.r, v.s)
    # the plain d = 3 chain first, then the integer-hull corrections
    est = sharp_chain(ctx, pd, 3)
    if radical_sign(est - target) is not Sign.Negative:
        return SpecialSurjResult(True, "generic", bullets, est, target)
    z3, est = hull_chain(ctx, m, v, 3)
    if radical_sign(est - target) is Sign.Positive:
        return SpecialSurjResult(True, f"hull z3=({z3.re},{z3.im})", bullets, est, target, z3)
    if sharpness(ctx, m, v) >= 4:
        z3, est = hull_chain(ctx, m, v, 4)
        if radical_sign(est - target) is Sign.Positive:
            return SpecialSurjResult(True, "4-sharp hull", bullets, est, target, z3)
    return SpecialSurjResult(False, "estimates fail", bullets, est, target, z3)


# bespoke values for v = (2, 1, 3) on a genus 7 surface with m = 2

@dataclass(frozen=True)
class BespokeValues:
    hbar: RadicalExpr
    chain: RadicalExpr
    chain_target: RadicalExpr
    vertex_margin: RadicalExpr
    vertex_target: RadicalExpr
    vertex_closed_form: RadicalExpr

    @property
    def chain_holds(self) -> bool:
        return radical_sign(self.chain - self.chain_target) is Sign.Positive

    @property
    def vertex_holds(self) -> bool:
        return radical_sign(self.vertex_margin - self.vertex_target) is Sign.Positive

    @property
    def closed_form_holds(self) -> bool:
        return radical_sign(self.vertex_closed_form - self.vertex_target) is Sign.Positive


BESPOKE_INPUT = (7, 2, MukaiVector(2, 1, 3))


def bespoke_values() -> BespokeValues:
    """2-sharp chain and the z1^{+1}-vertex exclusion margin for v = (2, 1, 3), g = 7, m = 2.

    ``vertex_closed_form`` is the simplified closed form usually quoted for
    the margin; it differs from the recomputed ``vertex_margin`` but both
    clear the target.
    """
    g, m, v = BESPOKE_INPUT
    ctx = SurfaceContext(g)
    r, c, s = v
    pd = polygon_data(ctx, m, v, 2)
    gap = surjectivity_gap(ctx, pd, r, s)
    first = pd.z1_plus(1)
    tail = znorm(ctx, first - pd.z2p) + znorm(ctx, pd.z2p - pd.z2)
    margin = (pd.hbar - tail) / 2 - radical_floor(ell(ctx, first) / 2)
    closed = (RadicalExpr.sqrt(877) - 4 * RadicalExpr.sqrt(46)) / 6 + RadicalExpr.sqrt(7) / 2 - 1
    return BespokeValues(
        hbar=pd.hbar,
        chain=sharp_chain(ctx, pd, 2),
        chain_target=gap,
        vertex_margin=margin,
        vertex_target=gap / 2,
        vertex_closed_form=closed,
    )
