from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octapet.exact_geom import canon_poly, contains_point, inner_point, poly_area2, poly_intersection
from octapet.pet import (
    BoundaryHit,
    make_system,
    is_fundamental_domain,
    orbit,
    pet_half_step,
    pet_map,
    translation_partition,
)


def test_make_system_unit_parameter():
    sys1 = make_system(1)
    assert sys1.F1 == canon_poly([(2, 1), (0, 1), (-2, -1), (0, -1)])
    assert sys1.F2 == canon_poly([(-1, 2), (-1, 0), (1, -2), (1, 0)])
    assert sys1.area2 == 8  # area 4s


def test_make_system_requires_positive():
    with pytest.raises(ValueError):
        make_system(0)
    with pytest.raises(ValueError):
        make_system(Fraction(-2, 5))


@pytest.mark.parametrize("s", [Fraction(2, 5), Fraction(1, 2), Fraction(1), Fraction(5, 4), Fraction(5, 13)])
def test_domains_are_fundamental_for_both_lattices(s):
    system = make_system(s)
    for F in (system.F1, system.F2):
        for L in (system.L1, system.L2):
            assert is_fundamental_domain(F, L)


def test_fundamental_domain_rejects_wrong_shape():
    system = make_system(1)
    # right area, but a triangle cannot tile under lattice translations
    tri = canon_poly([(-2, -1), (2, -1), (2, 1)])
    assert poly_area2(tri) == poly_area2(system.F1)
    assert not is_fundamental_domain(tri, system.L1)
    # area mismatch alone must also reject
    box = canon_poly([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert not is_fundamental_domain(box, system.L1)
    unit = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    assert is_fundamental_domain(box, unit)


def test_half_step_fixes_trivial_overlap():
    system = make_system(Fraction(2, 5))
    p = (Fraction(0), Fraction(0))
    q, vec = pet_half_step(system, p, 1)
    assert q == p and vec == (0, 0)
    image, net = pet_map(system, p)
    assert image == p and net == (0, 0)


def test_half_step_moves_into_target():
    system = make_system(Fraction(2, 5))
    p = (Fraction(11, 10), Fraction(1, 5))  # deep in the right wing of F1
    q, vec = pet_half_step(system, p, 1)
    assert contains_point(system.F2, q, strict=True)
    assert q == (p[0] + vec[0], p[1] + vec[1])
    # the vector belongs to L2: integer coordinates in that basis
    u, v = system.L2
    den = u[0] * v[1] - u[1] * v[0]
    a = (vec[0] * v[1] - vec[1] * v[0]) / den
    b = (u[0] * vec[1] - u[1] * vec[0]) / den
    assert a.denominator == 1 and b.denominator == 1


def test_boundary_points_error():
    system = make_system(Fraction(2, 5))
    with pytest.raises(BoundaryHit):
        pet_half_step(system, (Fraction(7, 5), Fraction(2, 5)), 1)  # on the top edge
    with pytest.raises(ValueError):
        pet_half_step(system, (Fraction(5), Fraction(5)), 1)


def test_partition_covers_domain():
    for s in [Fraction(1, 2), Fraction(2, 5), Fraction(9, 20), Fraction(13, 15)]:
        system = make_system(s)
        pieces = translation_partition(system)
        assert sum(poly_area2(p) for p, _ in pieces) == system.area2
        vectors = {v for _, v in pieces}
        assert (Fraction(0), Fraction(0)) in vectors
        # pieces nest inside F1
        for poly, _ in pieces:
            assert poly_area2(poly_intersection(poly, system.F1)) == poly_area2(poly)


def test_partition_piece_at_lower_left_corner():
    # the piece containing X^0's lower left corner at s = 9/20 is the
    # quadrilateral translated by (1/5, 0)
    s = Fraction(9, 20)
    system = make_system(s)
    probe = (-1 - s + Fraction(1, 100), -s + Fraction(1, 200))
    hits = [
        (poly, vec)
        for poly, vec in translation_partition(system)
        if contains_point(poly, probe, strict=True)
    ]
    assert len(hits) == 1
    poly, vec = hits[0]
    assert vec == (Fraction(1, 5), Fraction(0))
    assert len(poly) == 4


def test_partition_matches_map_on_samples():
    system = make_system(Fraction(2, 5))
    for poly, vec in translation_partition(system):
        p = inner_point(poly)
        image, net = pet_map(system, p)
        assert net == vec
        assert image == (p[0] + vec[0], p[1] + vec[1])


def test_orbit_periodic_word_sums_zero():
    system = make_system(Fraction(2, 5))
    p = (Fraction(-11, 10), Fraction(-1, 5))
    result = orbit(system, p, budget=10000)
    assert result.status == "periodic"
    sx = sum(v[0] for v in result.word)
    sy = sum(v[1] for v in result.word)
    assert (sx, sy) == (0, 0)
    assert len(result.word) == result.steps


def test_orbit_boundary_status():
    system = make_system(Fraction(2, 5))
    result = orbit(system, (Fraction(7, 5), Fraction(2, 5)), budget=10)
    assert result.status == "boundary"
    assert result.steps == 1


@settings(deadline=None, max_examples=25)
@given(
    st.integers(min_value=-90, max_value=90),
    st.integers(min_value=-35, max_value=35),
)
def test_orbit_properties_random_points(nx, ny):
    s = Fraction(2, 5)
    system = make_system(s)
    p = (Fraction(nx, 97) * (1 + s), Fraction(ny, 89) * s)
    if not contains_point(system.F1, p, strict=True):
        return
    result = orbit(system, p, budget=3000)
    if result.status != "periodic":
        return
    # replay the word: partial sums keep the point inside F1
    cur = p
    for vec in result.word:
        cur = (cur[0] + vec[0], cur[1] + vec[1])
        assert contains_point(system.F1, cur)
    assert cur == p
