import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octapet.exact_geom import (
    Line2,
    SimilarityMap,
    Surd,
    canon_poly,
    clip_halfplane,
    contains_point,
    convex_hull,
    convex_subtract,
    diam2,
    dist2,
    format_scalar,
    hausdorff2,
    inner_point,
    line_through,
    parse_number,
    poly_area2,
    poly_intersection,
    polys_touch,
    reflect_point,
    region_area2,
    region_eq,
    region_subtract,
    translate_poly,
)

fractions_st = st.fractions(min_value=-8, max_value=8, max_denominator=12)
points_st = st.tuples(fractions_st, fractions_st)


def polys_st(min_pts=3, max_pts=7):
    return (
        st.lists(points_st, min_size=min_pts, max_size=max_pts)
        .map(convex_hull)
        .filter(lambda p: len(p) >= 3)
    )


# ---------------------------------------------------------------------------
# Surd arithmetic

def test_surd_basic_values():
    r2 = Surd.sqrt(2)
    assert r2 * r2 == 2
    assert (1 + r2) * (1 - r2) == -1
    x = (Surd.sqrt(3) - 1) / 2
    assert 2 * x + 1 == Surd.sqrt(3)
    # the renormalization fixed point satisfies 2x^2 + 2x - 1 = 0
    assert 2 * x * x + 2 * x - 1 == 0


def test_surd_perfect_square_folds_to_rational():
    assert Surd.sqrt(9) == 3
    assert isinstance(Surd(0, 2, 4) + Fraction(1, 2), Fraction)


def test_surd_comparisons():
    r2 = Surd.sqrt(2)
    assert Fraction(7, 5) < r2 < Fraction(3, 2)
    assert r2 / 2 > Fraction(1, 2)
    assert -r2 < -Fraction(7, 5)
    assert max(r2, Fraction(3, 2)) == Fraction(3, 2)


def test_surd_floor():
    r3 = Surd.sqrt(3)
    assert math.floor(r3) == 1
    assert math.floor(-r3) == -2
    assert math.floor(10 * r3) == 17
    assert math.floor((r3 - 1) / 2) == 0


def test_mixed_radicands_rejected():
    with pytest.raises(TypeError):
        Surd.sqrt(2) + Surd.sqrt(3)


surd_st = st.tuples(fractions_st, fractions_st).map(lambda ab: Surd(ab[0], ab[1], 2))


@given(surd_st, surd_st)
def test_surd_field_roundtrip(x, y):
    assert (x + y) - y == x
    if y != 0:
        assert (x * y) / y == x


@given(surd_st)
def test_surd_floor_bound(x):
    n = math.floor(x)
    assert n <= x
    assert x < n + 1


@given(surd_st)
def test_scalar_format_roundtrip(x):
    assert parse_number(format_scalar(x)) == x


def test_parse_number_forms():
    assert parse_number("5/13") == Fraction(5, 13)
    assert parse_number("sqrt(2)/2") == Surd(0, Fraction(1, 2), 2)
    assert parse_number("(sqrt(3)-1)/2") == Surd(Fraction(-1, 2), Fraction(1, 2), 3)
    assert parse_number("(39+sqrt(3))/138") == Surd(Fraction(39, 138), Fraction(1, 138), 3)
    with pytest.raises(ValueError):
        parse_number("5//3")
    with pytest.raises(ValueError):
        parse_number("sqrt(x)")


# ---------------------------------------------------------------------------
# polygon basics

SQUARE = canon_poly([(0, 0), (2, 0), (2, 2), (0, 2)])
TRI = canon_poly([(0, 0), (4, 0), (0, 4)])


def test_canon_poly_is_ccw_and_minimal():
    p = canon_poly([(2, 0), (0, 0), (2, 2), (1, 0), (0, 2)])
    assert p == ((0, 0), (2, 0), (2, 2), (0, 2))
    assert poly_area2(p) == 8


@given(st.lists(points_st, min_size=1, max_size=9))
def test_hull_contains_points(pts):
    h = convex_hull(pts)
    for p in pts:
        assert contains_point(h, p)


@given(polys_st())
def test_hull_idempotent(p):
    assert convex_hull(p) == p
    assert poly_area2(p) > 0


@given(polys_st(), fractions_st, fractions_st, fractions_st)
def test_clip_shrinks_and_stays_inside(p, a, b, c):
    if a == 0 and b == 0:
        return
    q = clip_halfplane(p, a, b, c)
    assert poly_area2(q) <= poly_area2(p)
    for (x, y) in q:
        assert a * x + b * y <= c
    assert clip_halfplane(q, a, b, c) == q


@given(polys_st(), polys_st())
def test_intersection_inside_both(p, q):
    r = poly_intersection(p, q)
    assert poly_area2(r) <= min(poly_area2(p), poly_area2(q))
    for v in r:
        assert contains_point(p, v)
        assert contains_point(q, v)
    assert poly_area2(poly_intersection(q, p)) == poly_area2(r)


@given(polys_st(), polys_st())
def test_subtract_accounts_area(p, q):
    pieces = convex_subtract(p, q)
    inter = poly_intersection(p, q)
    total = sum(poly_area2(x) for x in pieces) + poly_area2(inter)
    assert total == poly_area2(p)


@given(polys_st(), polys_st())
def test_touch_matches_closed_intersection(p, q):
    t = polys_touch(p, q)
    if poly_area2(poly_intersection(p, q)) > 0:
        assert t
    if not t:
        # strictly separated: the open intersection is empty too
        assert poly_intersection(p, q) == ()


def test_touch_at_single_point():
    a = canon_poly([(0, 0), (1, 0), (1, 1), (0, 1)])
    b = canon_poly([(1, 1), (2, 1), (2, 2), (1, 2)])
    assert polys_touch(a, b)
    assert poly_intersection(a, b) == ()
    pt = poly_intersection(a, b, closed=True)
    assert pt == ((1, 1),)


def test_contains_point_strict_vs_closed():
    assert contains_point(SQUARE, (0, 1))
    assert not contains_point(SQUARE, (0, 1), strict=True)
    assert contains_point(SQUARE, (1, 1), strict=True)
    assert not contains_point(SQUARE, (3, 1))


def test_region_ops():
    region = (SQUARE,)
    hole = canon_poly([(0, 0), (1, 0), (1, 1), (0, 1)])
    rest = region_subtract(region, hole)
    assert region_area2(rest) == poly_area2(SQUARE) - poly_area2(hole)
    assert region_eq(tuple(rest) + (hole,), region)
    assert not region_eq(rest, region)


def test_diam_and_hausdorff():
    assert diam2(SQUARE) == 8
    assert hausdorff2(SQUARE, SQUARE) == 0
    shifted = translate_poly(SQUARE, (Fraction(3), Fraction(0)))
    assert hausdorff2(SQUARE, shifted) == 9
    assert hausdorff2(SQUARE, canon_poly([(0, 0), (2, 0), (2, 2)])) == dist2((0, 2), (1, 1))


@given(polys_st(), points_st)
def test_hausdorff_translation(p, v):
    q = translate_poly(p, v)
    assert hausdorff2(p, q) == dist2(v, (0, 0))


@given(polys_st())
def test_inner_point_is_interior(p):
    assert contains_point(p, inner_point(p), strict=True)


# ---------------------------------------------------------------------------
# lines, reflections, similarity maps

def test_line_canonical_and_reflection():
    l1 = line_through((0, 0), (2, 2))
    l2 = line_through((1, 1), (-3, -3))
    assert l1 == l2
    assert reflect_point(l1, (2, 0)) == (0, 2)
    d = Line2.make(1, 1, Fraction(-4, 5))  # x + y = -2s at s = 2/5
    p = (Fraction(-7, 5), Fraction(-2, 5))
    assert reflect_point(d, p) == (Fraction(-2, 5), Fraction(3, 5))


@given(points_st, points_st, points_st)
def test_reflection_involution(p, q, r):
    if p == q:
        return
    line = line_through(p, q)
    assert reflect_point(line, reflect_point(line, r)) == r
    assert dist2(reflect_point(line, r), p) == dist2(r, p)


def test_similarity_validation():
    with pytest.raises(ValueError):
        SimilarityMap(1, 0, 0, 2, 0, 0)
    with pytest.raises(ValueError):
        SimilarityMap(0, 0, 0, 0, 1, 1)
    s = Fraction(2, 5)
    m = SimilarityMap(s, s, s, -s, Fraction(1), Fraction(0))
    assert m.scale2 == 2 * s * s
    assert m.orientation == -1


def test_similarity_apply_compose_inverse():
    rot = SimilarityMap.rotation(1)
    tr = SimilarityMap.translation((Fraction(1), Fraction(2)))
    m = tr.compose(rot)
    assert m.apply((1, 0)) == (1, 3)
    inv = m.inverse()
    assert inv.apply(m.apply((Fraction(5, 7), Fraction(-3, 2)))) == (Fraction(5, 7), Fraction(-3, 2))
    ident = m.compose(inv)
    assert ident == SimilarityMap.identity()


@given(polys_st())
def test_similarity_scales_area(p):
    s = Fraction(1, 2)
    m = SimilarityMap(s, s, s, -s, Fraction(0), Fraction(0))  # contraction with reflection
    q = m.apply_poly(p)
    assert poly_area2(q) == m.scale2 * poly_area2(p)
    assert region_eq((m.inverse().apply_poly(q),), (p,))


def test_reflection_map_matches_pointwise():
    line = Line2.make(1, 1, Fraction(-4, 5))
    m = SimilarityMap.reflection(line)
    for p in [(0, 0), (1, 2), (Fraction(-2, 5), Fraction(3, 5))]:
        assert m.apply(p) == reflect_point(line, p)
    assert m.orientation == -1
    assert m.scale2 == 1
