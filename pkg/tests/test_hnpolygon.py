import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from k3bn.exactnum import RadicalExpr as R, Sign, radical_sign
from k3bn.geometry import cross, point
from k3bn.hnpolygon import (
    bespoke_values,
    charge,
    ell,
    est3_value,
    family_bullets,
    family_vector,
    hull_chain,
    hull_vertex_below,
    polygon_data,
    section_upper_bound,
    sharp_chain,
    sharpness,
    special_surj_check,
    surjectivity_gap,
    surjectivity_inequality,
    zpoint,
    znorm,
)
from k3bn.lattice import DegenerateInput, MukaiVector, SurfaceContext, UsageError, derived_vectors

G7 = SurfaceContext(7)


def test_ell_examples():
    assert ell(G7, (0, 1)) == R.sqrt(28)
    assert ell(G7, (24, 4)) == R.rational(32)
    assert ell(G7, (0, 0)) == R()


def test_znorm_examples():
    assert znorm(G7, (-1, 1)) == R.sqrt(29)
    assert znorm(G7, (24, 4)) == R.rational(32)
    assert znorm(G7, (0, 0)) == R()


def test_polygon_data_seven_two():
    pd = polygon_data(G7, 2, (2, 1, 3), 2)
    assert pd.z1 == (-1, 1) and pd.z2 == (24, 4)
    assert pd.z1_plus() == (1, 1)
    assert pd.z1p == (0, 0)
    assert pd.z2p == (Fraction(22, 3), 2)
    assert pd.chi == -24
    assert pd.hbar == R.sqrt(877) + R.sqrt(29)
    assert surjectivity_gap(G7, pd, 2, 3) == R.sqrt(29) + R.sqrt(877) - 34


def test_polygon_data_five_three():
    pd = polygon_data(SurfaceContext(5), 3, (4, 3, 9), 3)
    assert pd.chi == -72
    assert pd.hbar == R.sqrt(7549) + R.sqrt(205)
    assert pd.z1_plus(0) == pd.z1


def test_polygon_data_rejects_degenerate():
    with pytest.raises(DegenerateInput):
        polygon_data(G7, 2, (2, 0, 3))
    with pytest.raises(DegenerateInput):
        polygon_data(G7, 1, (2, 2, 3))


def test_section_bound_examples():
    assert section_upper_bound(G7, [(-1, 1), (24, 4)]) == 7
    assert section_upper_bound(G7, [(1, 0)]) == 0
    assert section_upper_bound(G7, []) == 0


def test_sharpness_examples():
    assert sharpness(G7, 2, (2, 1, 3)) == 4
    assert sharpness(SurfaceContext(5), 3, (4, 3, 9)) == 5
    assert sharpness(SurfaceContext(3), 5, (2, 5, 25)) == 4


def test_surjectivity_inequality_examples():
    assert surjectivity_inequality(SurfaceContext(37), 1, (3, 1, 12)).holds
    res = surjectivity_inequality(G7, 2, (2, 1, 3))
    assert not res.holds
    with pytest.raises(UsageError):
        surjectivity_inequality(G7, 1, (2, 2, 3))


def test_special_check_examples():
    res = special_surj_check(G7, 3, 5)
    assert res.holds and res.route == "generic"
    assert not special_surj_check(SurfaceContext(5), 2, 3).holds
    res = special_surj_check(SurfaceContext(5), 3, 3)
    assert res.holds and res.route == "4-sharp hull"
    assert special_surj_check(SurfaceContext(6), 3, 4).z3 == (-8, 3)
    assert special_surj_check(SurfaceContext(8), 2, 5).z3 == (-14, 4)


def test_bullets_follow_definitions():
    for g in range(3, 15):
        for m in range(1, 6):
            for k in range(1, 3 * g - 2):
                kt = m * (g - 1) - k
                expected = (g < 2 * k and g != k, g < 2 * kt and g != kt,
                            (g + 1) % k != 0 or kt == 0 or (g + 1) % kt != 0)
                assert tuple(family_bullets(g, m, k).values()) == expected


def test_est3_closed_form_matches_chain():
    for g in range(3, 12):
        ctx = SurfaceContext(g)
        for k in range(2, 3 * g - 2):
            if math.gcd(g - 1, k) != 1:
                continue
            for m in range(1, 5):
                v = family_vector(g, k)
                if m * v.r <= v.c:
                    continue
                pd = polygon_data(ctx, m, v, 3)
                assert est3_value(ctx, m, k) == sharp_chain(ctx, pd, 3), (g, k, m)


def test_hull_vertex_five_three():
    ctx = SurfaceContext(5)
    assert hull_vertex_below(ctx, 4, family_vector(5, 3), 3) == (-3, 2)
    z3, _ = hull_chain(ctx, 3, family_vector(5, 3), 4)
    assert z3 == (-3, 2)


def test_bespoke_values():
    b = bespoke_values()
    assert b.hbar == R.sqrt(877) + R.sqrt(29)
    assert b.chain == (R.sqrt(877) - R.sqrt(613)) / 3
    assert b.chain_holds and b.vertex_holds and b.closed_form_holds


ints = st.integers(-300, 300)


@given(st.integers(2, 60), ints, ints.filter(bool))
def test_norm_dominates_ell(g, x, y):
    ctx = SurfaceContext(g)
    assert radical_sign(znorm(ctx, (x, y)) - ell(ctx, (x, y))) is not Sign.Negative


@given(st.integers(2, 30), st.lists(st.tuples(st.integers(0, 40), st.integers(0, 10)), min_size=2, max_size=6))
def test_norm_triangle_inequality(g, steps):
    ctx = SurfaceContext(g)
    # a convex chain: edges sorted by slope
    steps = sorted((s for s in steps if s != (0, 0)), key=lambda s: Fraction(s[1], s[0]) if s[0] else math.inf)
    assume(steps)
    chord = zpoint(sum(s[0] for s in steps), sum(s[1] for s in steps))
    total = sum((znorm(ctx, s) for s in steps), R())
    assert radical_sign(total - znorm(ctx, chord)) is not Sign.Negative


@given(st.integers(2, 40), st.integers(1, 8), st.integers(1, 30), st.integers(-60, 60), st.integers(0, 9))
def test_z1_plus_and_z2(g, m, r, c, d):
    assume(c > 0 and m * r != c)
    ctx = SurfaceContext(g)
    v = MukaiVector(r, c, 7)
    pd = polygon_data(ctx, m, v, d)
    assert pd.z1_plus(d) - pd.z1 == (d, 0)
    assert pd.z2 == charge(derived_vectors(ctx, m, v).vc)


def _convex(pts):
    n = len(pts)
    turns = [cross(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) for i in range(n)]
    return all(t >= 0 for t in turns) or all(t <= 0 for t in turns)


@given(st.integers(3, 30), st.integers(2, 87), st.integers(1, 7), st.integers(1, 12))
def test_sharpness_is_polygon_convexity(g, k, m, d):
    assume(k <= 3 * g - 3 and math.gcd(g - 1, k) == 1)
    ctx = SurfaceContext(g)
    v = family_vector(g, k)
    assume(m * v.r > v.c)
    pd = polygon_data(ctx, m, v, d)
    pts = [point(0, 0), point(*pd.z1p), point(*pd.z1_plus()), point(*pd.z2p), point(*pd.z2)]
    assert (sharpness(ctx, m, v) >= d) == _convex(pts)
