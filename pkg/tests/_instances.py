"""Instance generators shared by the property and acceptance tests."""

import math
from fractions import Fraction

from k3bn.geometry import ORIGIN, Region, Segment, region_membership
from k3bn.lattice import MukaiVector, SurfaceContext, derived_vectors, mukai_square


def lemma_vectors(g: int, r_max: int = 8, c_max: int = 10):
    """Vectors with r, c, s > 0 meeting one of the two no-integer-point hypotheses.

    First kind: square zero and r / gcd(r, c) <= g - 1.  Second kind:
    s = floor(((g-1)c^2 + 1) / r) and g - 1 >= max(r^2/c, r + 1).  Vectors of
    the second kind with negative square are roots and are left out.
    """
    ctx = SurfaceContext(g)
    g1 = g - 1
    for r in range(1, r_max + 1):
        for c in range(1, c_max + 1):
            found = set()
            if (g1 * c * c) % r == 0 and r // math.gcd(r, c) <= g1:
                found.add(MukaiVector(r, c, g1 * c * c // r))
            s = (g1 * c * c + 1) // r
            if s > 0 and g1 >= max(Fraction(r * r, c), r + 1):
                v = MukaiVector(r, c, s)
                if mukai_square(ctx, v) >= 0:
                    found.add(v)
            yield from sorted(found)


def lemma_instances(g_max: int = 12, m_max: int = 4):
    """(ctx, v, m, segment) with sigma_v a valid point of Gamma."""
    for g in range(2, g_max + 1):
        ctx = SurfaceContext(g)
        for v in lemma_vectors(g):
            for m in range(1, m_max + 1):
                if m * v.r <= v.c:
                    continue
                sigma = derived_vectors(ctx, m, v).sigma_v
                if not region_membership(ctx, sigma, Region.Gamma):
                    continue
                yield ctx, v, m, Segment(ORIGIN, sigma, include_a=False)
