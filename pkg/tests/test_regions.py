from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from _instances import lemma_instances, lemma_vectors
from k3bn.exactnum import RadicalExpr, Sign, radical_sign
from k3bn.geometry import ORIGIN, Region, Segment, point, project, region_membership
from k3bn.lattice import MukaiVector, SurfaceContext, UsageError, is_primitive, mukai_square
from k3bn.regions import (
    Bounds,
    DegenerateParallelogram,
    OmegaClass,
    OmegaQuery,
    WallStatus,
    WallVerdict,
    admits_no_wall,
    in_fan,
    omega_membership,
    roots_in_trapezoid,
    v_sigma_plus,
)

G7 = SurfaceContext(7)


def _seg(x, y=0):
    return Segment(ORIGIN, point(x, y), include_a=False)


def test_split_degenerate_for_square_zero():
    with pytest.raises(DegenerateParallelogram):
        v_sigma_plus(G7, (2, 1, 3), point(Fraction(2, 9), 0))


def test_split_back_substitution():
    ctx = SurfaceContext(3)
    v = MukaiVector(5, 2, 1)
    sp = v_sigma_plus(ctx, v, point(Fraction(1, 2), 0))
    assert tuple(sp.plus[i] + sp.minus[i] for i in range(3)) == tuple(RadicalExpr.coerce(t) for t in v)
    for part, (x, y) in zip((sp.plus, sp.minus), sp.endpoints):
        # both parts are isotropic and project to the parabola point listed
        assert x == part.x / part.z and y == part.y / part.z
        assert radical_sign(x - 2 * y * y) is Sign.Zero
    assert radical_sign(sp.plus.x) is not Sign.Negative


def test_omega_examples():
    seg = _seg(Fraction(1, 2))
    assert omega_membership(G7, (2, 1, 3), seg, (2, 1, 3)) is OmegaClass.Outside
    assert omega_membership(G7, (2, 2, 2), seg, (1, 1, 1)) is OmegaClass.InOmegaLine
    # coplanarity with the segment's lines fails
    assert omega_membership(G7, (5, 2, 9), _seg(Fraction(1, 2)), (1, 5, 2)) is OmegaClass.Outside


def test_no_wall_examples():
    q = OmegaQuery(MukaiVector(2, 1, 3), _seg(Fraction(2, 9)))
    assert admits_no_wall(G7, q).status is WallStatus.NoWall
    q = OmegaQuery(MukaiVector(6, 5, 25), _seg(Fraction(6, 65)))
    assert admits_no_wall(G7, q).status is WallStatus.NoWall
    res = admits_no_wall(G7, OmegaQuery(MukaiVector(2, 2, 2), _seg(Fraction(1, 10))), strict=False)
    assert res.status is WallStatus.WallCandidates
    assert (1, 1, 1) in res.witnesses


def test_negative_square_is_inconclusive():
    res = admits_no_wall(G7, OmegaQuery(MukaiVector(7, 1, 1), _seg(Fraction(1, 10))))
    assert res.status is WallStatus.Inconclusive


def test_verdict_witness_consistency():
    with pytest.raises(ValueError):
        WallVerdict(WallStatus.NoWall, witnesses=((1, 1, 1),))
    with pytest.raises(ValueError):
        WallVerdict(WallStatus.WallCandidates)


def test_trapezoid_examples():
    assert MukaiVector(3, 1, 1) in roots_in_trapezoid(SurfaceContext(3), (5, 2, 1), 20)
    assert roots_in_trapezoid(G7, (2, 1, 3), 20) == []
    assert roots_in_trapezoid(G7, (2, 0, 3), 20) == []
    with pytest.raises(UsageError):
        roots_in_trapezoid(G7, (2, -1, 3), 20)


def test_trapezoid_matches_brute_force():
    for g in range(2, 8):
        ctx = SurfaceContext(g)
        for v in [(5, 2, 1), (4, 3, 7), (3, 2, 9)]:
            r, c, s = v
            brute = []
            for cp in range(1, 9):
                for rp in range(1, (g - 1) * cp * cp + 2):
                    sp, rem = divmod((g - 1) * cp * cp + 1, rp)
                    if rem == 0 and mukai_square(ctx, (rp, cp, sp)) == -2 \
                            and Fraction(cp, rp) < Fraction(c, r) and Fraction(cp, sp) < Fraction(c, s):
                        brute.append((rp, cp, sp))
            assert sorted(map(tuple, roots_in_trapezoid(ctx, v, 8))) == sorted(brute)


def test_fan_membership():
    seg = Segment(point(1, 0), point(1, 1))
    assert in_fan(ORIGIN, seg, (Fraction(1, 2), Fraction(1, 4)))
    assert not in_fan(ORIGIN, seg, ORIGIN)
    assert not in_fan(ORIGIN, seg, (2, 1))
    line = _seg(1)
    assert in_fan(point(-1, 0), line, (Fraction(1, 2), 0))


def test_bounds_doubling():
    v = MukaiVector(3, -4, 5)
    assert Bounds.default_for(v) == Bounds(y_max=4, root_bound=256)
    assert Bounds().doubled(v) == Bounds(y_max=8, root_bound=512)


_LEMMA = [(ctx, v, m, seg) for ctx, v, m, seg in lemma_instances(g_max=8)]


def test_no_wall_stable_under_doubled_bounds():
    for ctx, v, m, seg in _LEMMA:
        first = admits_no_wall(ctx, OmegaQuery(v, seg))
        if first.status is WallStatus.NoWall:
            again = admits_no_wall(ctx, OmegaQuery(v, seg, Bounds().doubled(v)))
            assert again.status is WallStatus.NoWall, (ctx.g, v, m)


def test_lemma_vectors_have_empty_trapezoid():
    # square-zero vectors: the open trapezoid carries no root projection at all;
    # the other kind only excludes roots from its intersection with Gamma
    for g in range(2, 13):
        ctx = SurfaceContext(g)
        for v in lemma_vectors(g):
            roots = roots_in_trapezoid(ctx, v, 4 * v.c)
            if mukai_square(ctx, v) == 0:
                assert roots == [], (g, v)
            else:
                assert not [d for d in roots if region_membership(ctx, project(d), Region.Gamma)], (g, v)


def test_second_kind_trapezoid_may_hold_roots_outside_gamma():
    roots = roots_in_trapezoid(G7, (4, 3, 13), 12)
    assert roots == [MukaiVector(11, 8, 35)]
    assert not region_membership(G7, project(roots[0]), Region.Gamma)


def test_primitive_square_zero_strictness_irrelevant():
    for ctx, v, m, seg in _LEMMA:
        if mukai_square(ctx, v) == 0 and is_primitive(v):
            strict = admits_no_wall(ctx, OmegaQuery(v, seg), strict=True)
            loose = admits_no_wall(ctx, OmegaQuery(v, seg), strict=False)
            assert strict.status == loose.status


small = st.integers(-6, 6)


@given(st.integers(2, 8), st.integers(1, 6), st.integers(-4, 4), st.integers(1, 12),
       st.fractions(Fraction(1, 20), Fraction(19, 20), max_denominator=20),
       st.tuples(small, small, small))
def test_omega_reflection(g, r, c, s, x, u):
    ctx = SurfaceContext(g)
    v = MukaiVector(r, c, s)
    assume(mukai_square(ctx, v) > 0 and u != (0, 0, 0) and tuple(u) != tuple(v))
    seg = _seg(x)
    cls = omega_membership(ctx, v, seg, u)
    mirror = tuple(v[i] - u[i] for i in range(3))
    if cls is OmegaClass.InOmegaPlus:
        assert omega_membership(ctx, v, seg, mirror) is OmegaClass.InOmegaMinus
    elif cls is OmegaClass.InOmegaMinus:
        assert omega_membership(ctx, v, seg, mirror) is OmegaClass.InOmegaPlus


def test_omega_reflection_exhaustive():
    hits = 0
    box = range(-7, 8)
    for g, v, x in ((4, (1, 4, 6), Fraction(17, 20)), (6, (1, 2, 3), Fraction(7, 20)), (5, (2, 3, 3), Fraction(3, 10))):
        ctx = SurfaceContext(g)
        seg = _seg(x)
        for a in box:
            for b in box:
                for c in box:
                    u = (a, b, c)
                    if u == (0, 0, 0) or u == tuple(v):
                        continue
                    if omega_membership(ctx, v, seg, u) is OmegaClass.InOmegaPlus:
                        hits += 1
                        mirror = tuple(v[i] - u[i] for i in range(3))
                        assert omega_membership(ctx, v, seg, mirror) is OmegaClass.InOmegaMinus
    assert hits > 0
