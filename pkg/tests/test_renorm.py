from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octapet.exact_geom import Line2, Surd, canon_poly
from octapet.renorm import (
    ALL_BELOW_HALF,
    FINITELY_ABOVE_HALF,
    INFINITELY_ABOVE_HALF,
    UNDECIDED,
    _phi_unvalidated,
    even_expansion,
    insertion_similarity,
    inversion_similarity,
    is_oddly_even,
    layering_constant,
    phi_map,
    renorm_map,
    verify_filling,
    verify_renorm_conjugacy,
    zones,
)

F = Fraction

SQRT2_OVER_2 = Surd.sqrt(2) / 2
FIXED_POINT = (Surd.sqrt(3) - 1) / 2

# exact R-orbits (nonzero values); computed independently by hand
FROZEN_ORBITS = {
    F(1, 2): [F(1, 2)],
    F(2, 5): [F(2, 5), F(1, 4)],
    F(5, 13): [F(5, 13), F(3, 10), F(2, 3), F(1, 3), F(1, 2)],
    F(8, 13): [F(8, 13), F(5, 13), F(3, 10), F(2, 3), F(1, 3), F(1, 2)],
    F(12, 29): [F(12, 29), F(5, 24), F(2, 5), F(1, 4)],
    F(5, 24): [F(5, 24), F(2, 5), F(1, 4)],
    F(13, 15): [F(13, 15), F(2, 15), F(3, 4), F(1, 4)],
    F(9, 14): [F(9, 14), F(5, 14), F(2, 5), F(1, 4)],
    F(11, 26): [F(11, 26), F(2, 11), F(3, 4), F(1, 4)],
    F(30, 73): [F(30, 73), F(13, 60), F(4, 13), F(5, 8), F(3, 8), F(1, 3), F(1, 2)],
    F(27, 64): [F(27, 64), F(5, 27), F(7, 10), F(3, 10), F(2, 3), F(1, 3), F(1, 2)],
    F(11, 35): [F(11, 35), F(13, 22), F(9, 22), F(2, 9), F(1, 4)],
    F(12, 31): [F(12, 31), F(7, 24), F(5, 7), F(2, 7), F(3, 4), F(1, 4)],
    F(18, 23): [F(18, 23), F(5, 23), F(3, 10), F(2, 3), F(1, 3), F(1, 2)],
    F(26, 71): [F(26, 71), F(19, 52), F(7, 19), F(5, 14), F(2, 5), F(1, 4)],
    F(13, 32): [F(13, 32), F(3, 13), F(1, 6)],
    F(22, 57): [F(22, 57), F(13, 44), F(9, 13), F(4, 13), F(5, 8), F(3, 8), F(1, 3), F(1, 2)],
    F(11, 30): [F(11, 30), F(4, 11), F(3, 8), F(1, 3), F(1, 2)],
    F(41, 112): [F(41, 112), F(15, 41), F(11, 30), F(4, 11), F(3, 8), F(1, 3), F(1, 2)],
}

ODDLY_EVEN = [F(1, 2), F(2, 5), F(12, 29), F(5, 24), F(26, 71), F(13, 32), F(11, 30)]


def test_renorm_map_examples():
    assert renorm_map(F(5, 13)) == F(3, 10)
    assert renorm_map(F(8, 13)) == F(5, 13)
    assert renorm_map(F(30, 73)) == F(13, 60)
    assert renorm_map(F(13, 60)) == F(4, 13)
    assert renorm_map(FIXED_POINT) == FIXED_POINT
    other = renorm_map(SQRT2_OVER_2)
    assert other == 1 - SQRT2_OVER_2
    assert renorm_map(other) == SQRT2_OVER_2


def test_renorm_map_frozen_orbits():
    for s, orbit in FROZEN_ORBITS.items():
        x = s
        walked = [x]
        while True:
            x = renorm_map(x)
            if x == 0:
                break
            walked.append(x)
        assert walked == orbit, s


def test_renorm_map_domain():
    for bad in (0, 1, F(3, 2), F(-1, 3), 2):
        with pytest.raises(ValueError):
            renorm_map(bad)
    assert renorm_map(F(1, 2)) == 0
    assert renorm_map(F(1, 4)) == 0
    assert renorm_map(F(1, 3)) == F(1, 2)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=20),
    num=st.integers(min_value=1, max_value=400),
    den=st.integers(min_value=401, max_value=1200),
)
def test_renorm_interval_property(n, num, den):
    """The below-half branch carries (1/2n, 1/(2n-1)] onto [1/2, 1)."""
    y = F(1, 2) + F(num, den) * F(1, 2)
    if y >= 1:
        y = F(1, 2)
    x = 1 / (2 * (y + n - 1))
    assert F(1, 2 * n) < x <= F(1, 2 * n - 1)
    assert renorm_map(x) == y
    assert renorm_map(F(1, 2 * n - 1)) == F(1, 2)


def test_even_expansion_oddly_even_rational():
    pc = even_expansion(F(12, 29))
    assert pc.orbit == (F(12, 29), F(5, 24), F(2, 5), F(1, 4))
    assert pc.expansion == (2, 4, 2, F(1, 4))
    assert pc.classification == ALL_BELOW_HALF
    assert pc.terminated
    assert pc.cycle_start is None


def test_even_expansion_finitely_above_half():
    # engineered so the expansion starts 3,1,3,1,2,2
    pc = even_expansion(F(23, 78))
    assert pc.orbit == (
        F(23, 78), F(16, 23), F(7, 23), F(9, 14), F(5, 14), F(2, 5), F(1, 4),
    )
    assert pc.expansion == (3, 1, 3, 1, 2, 2, F(1, 4))
    assert pc.classification == FINITELY_ABOVE_HALF


def test_even_expansion_surd_cycle():
    pc = even_expansion(SQRT2_OVER_2)
    assert pc.orbit == (SQRT2_OVER_2, 1 - SQRT2_OVER_2)
    assert pc.expansion == (1, 3)
    assert pc.cycle_start == 0
    assert pc.classification == INFINITELY_ABOVE_HALF

    fp = even_expansion(FIXED_POINT)
    assert fp.orbit == (FIXED_POINT,)
    assert fp.expansion == (2,)
    assert fp.cycle_start == 0
    assert fp.classification == ALL_BELOW_HALF


def test_even_expansion_horizon():
    pc = even_expansion(F(30, 73), horizon=3)
    assert pc.classification == UNDECIDED
    assert pc.horizon == 3
    assert len(pc.orbit) == 3


def test_even_expansion_continuity_along_convergents():
    """Convergents of the fixed point share growing expansion prefixes with it."""
    convergents = [F(1, 2), F(1, 3), F(3, 8), F(4, 11), F(11, 30), F(15, 41), F(41, 112)]
    lengths = []
    for r in convergents:
        exp = even_expansion(r).expansion
        shared = 0
        for term in exp:
            if term == 2:
                shared += 1
            else:
                break
        lengths.append(shared)
    assert lengths == [0, 0, 1, 2, 3, 4, 5]


def test_is_oddly_even():
    assert is_oddly_even(F(12, 29))
    assert not is_oddly_even(F(8, 13))
    assert is_oddly_even(FIXED_POINT)
    assert not is_oddly_even(SQRT2_OVER_2)
    assert is_oddly_even(F(1, 2))


def test_oddly_even_closed_under_renormalization():
    for s in ODDLY_EVEN:
        for v in FROZEN_ORBITS[s]:
            assert is_oddly_even(v), v


@settings(max_examples=80, deadline=None)
@given(num=st.integers(min_value=1, max_value=300), den=st.integers(min_value=2, max_value=301))
def test_even_expansion_consistency(num, den):
    if num >= den:
        num = den - 1
    s = F(num, den)
    pc = even_expansion(s)
    for a, b in zip(pc.orbit, pc.orbit[1:]):
        assert renorm_map(a) == b
    for k, (v, term) in enumerate(zip(pc.orbit, pc.expansion)):
        if isinstance(term, Fraction):
            assert k == len(pc.orbit) - 1
            assert term == v
            assert renorm_map(v) == 0
        else:
            assert F(1, term + 1) < v <= F(1, term)


def test_layering_constant_frozen():
    expected = {
        F(13, 15): 3,
        F(9, 14): 1,
        F(11, 26): 3,
        F(30, 73): 2,
        F(27, 64): 3,
        F(12, 29): 2,
        F(1, 3): 1,
        F(3, 8): 1,
        F(14, 17): 2,
        F(13, 44): 1,
    }
    for s, k in expected.items():
        assert layering_constant(s) == k, s
    with pytest.raises(ValueError):
        layering_constant(F(1, 2))
    with pytest.raises(ValueError):
        layering_constant(F(1, 4))


def test_phi_map_below_half_geometry():
    s = F(12, 29)
    t = F(5, 24)
    pm = _phi_unvalidated(s)
    assert pm.t == t
    assert pm.kind == "similarity"
    assert pm.scale2 == 2 * s * s
    assert pm.left.orientation == -1
    assert pm.left.apply((-1 - t, -t)) == (-1 - s, -s)
    assert pm.left.apply((-t, -t)) == (-1, 0)
    # the right branch is the point-reflection conjugate of the left one
    for p in [(-t, -t), (F(-1, 2), F(1, 8)), (-1 - t, -t)]:
        q = pm.left.apply((-p[0], -p[1]))
        assert pm.right.apply(p) == (-q[0], -q[1])


def test_phi_map_above_half_translations():
    s = F(8, 13)
    pm = _phi_unvalidated(s)
    assert pm.t == F(5, 13)
    assert pm.kind == "translation"
    d = F(5, 13) - F(8, 13)
    assert (pm.left.m00, pm.left.m01, pm.left.m10, pm.left.m11) == (1, 0, 0, 1)
    assert (pm.left.tx, pm.left.ty) == (d, d)
    assert (pm.right.tx, pm.right.ty) == (-d, -d)


def test_scale_chain_contracts():
    for s in [F(5, 13), F(12, 29), F(30, 73), F(13, 32), F(2, 5)]:
        pm = _phi_unvalidated(s)
        assert pm.scale2 == 2 * s * s
        assert pm.scale2 < F(1, 2)


def test_verify_renorm_conjugacy_examples():
    for s in [F(5, 13), F(8, 13)]:
        report = verify_renorm_conjugacy(s)
        assert report.clean and report.conjugate and report.missed_orbit, report.to_json()
    assert '"clean":true' in verify_renorm_conjugacy(F(5, 13)).to_json()


def test_phi_map_gate_returns_validated():
    pm = phi_map(F(5, 13))
    assert pm.t == F(3, 10)


def test_zones_below_half_octagon_core():
    """At 13/44 the renormalized parameter exceeds 1/2, so U is a small octagon."""
    zs = zones(F(13, 44))
    assert zs.K == 1
    assert len(zs.psi) == 2
    expected_u = canon_poly(
        [
            (F(-13, 44), F(5, 44)),
            (F(-13, 44), F(-5, 44)),
            (F(-21, 44), F(-13, 44)),
            (F(-31, 44), F(-13, 44)),
            (F(-39, 44), F(-5, 44)),
            (F(-39, 44), F(5, 44)),
            (F(-31, 44), F(13, 44)),
            (F(-21, 44), F(13, 44)),
        ]
    )
    assert zs.U == expected_u
    assert zs.shift == (F(9, 11), 0)
    assert zs.delta is None


def test_zones_below_half_diamond_core():
    zs = zones(F(11, 26))
    r = F(4, 26)
    assert zs.K == 3
    assert len(zs.psi) == 4
    assert all(zs.psi)
    expected_u = canon_poly([(-1, 0), (r - 1, r), (2 * r - 1, 0), (r - 1, -r)])
    assert zs.U == expected_u
    assert zs.shift == (2 * r, 0)


def test_zones_above_half():
    zs = zones(F(14, 17))
    assert zs.K == 2
    assert len(zs.psi) == 3
    assert zs.U is None
    assert zs.delta == Line2.make(1, 0, F(-14, 17))
    assert zs.shift == (F(6, 17), F(6, 17))


def test_verify_filling():
    assert verify_filling(F(11, 26))
    assert verify_filling(F(14, 17))


def test_insertion_similarity():
    t, psi = insertion_similarity(F(5, 13))
    assert t == F(5, 23)
    assert psi.orientation == 1
    assert psi.apply((F(-18, 13), F(-5, 13))) == (F(-28, 23), F(-5, 23))
    t2, _ = insertion_similarity(F(1, 4))
    assert t2 == F(1, 6)


def test_inversion_similarity():
    t, n = inversion_similarity(F(8, 13))
    assert t == F(13, 16)
    assert (n.tx, n.ty) == (0, 0)
    assert n.orientation == -1
    image_h = n.apply((1, 0))
    image_d = n.apply((1, 1))
    assert image_h[0] == image_h[1] != 0
    assert image_d[1] == 0 != image_d[0]
    t3, _ = inversion_similarity(F(5, 13))
    assert t3 == F(13, 10)
