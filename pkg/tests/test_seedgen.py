import math

import pytest
from hypothesis import given, strategies as st

from spiral_voronoi import (
    DuplicatePointError,
    EquidistantSpiralParams,
    LinearSpiralParams,
    ParameterError,
    SeedSet,
    bbox_offsets,
    gen_equidistant,
    gen_hex_lattice,
    gen_linear,
    gen_square_lattice,
    translate_tile,
)
from spiral_voronoi.seedgen import equidistant_angles, provenance_from_dict

# Polar angles of the first seeds for p = q = 1, found by a forward scan plus
# 200 bisection steps on the Euclidean chord between actual spiral points.
ORACLE_ANGLES_P1Q1 = [0.0, 6.283185307179586, 7.239983895052662,
                      8.078558521654678, 8.834772487104349]


def _chord_oracle(phi0, a, p):
    def point(phi):
        return a * phi * math.cos(phi), a * phi * math.sin(phi)

    x0, y0 = point(phi0)

    def f(phi):
        x, y = point(phi)
        return math.hypot(x - x0, y - y0) - p

    lo, h = phi0 + 1e-12, 1e-4
    while f(lo + h) < 0:
        lo += h
    hi = lo + h
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if f(mid) < 0 else (lo, mid)
    return 0.5 * (lo + hi)


def test_oracle_reproduces_frozen_angles():
    a = 1 / (2 * math.pi)
    phis = [0.0, 2 * math.pi]
    for _ in range(3):
        phis.append(_chord_oracle(phis[-1], a, 1.0))
    assert phis == pytest.approx(ORACLE_ANGLES_P1Q1, abs=1e-12)


def test_single_seed_is_origin():
    assert gen_equidistant(EquidistantSpiralParams(1, 1, 1)).points == ((0.0, 0.0),)


def test_second_point_unit_distance_on_spiral():
    s = gen_equidistant(EquidistantSpiralParams(1, 1, 2))
    x, y = s.points[1]
    r = math.hypot(x, y)
    assert r == pytest.approx(1.0, abs=1e-9)
    phi = equidistant_angles(EquidistantSpiralParams(1, 1, 2))[1]
    assert r == pytest.approx(phi / (2 * math.pi), abs=1e-12)


def test_angles_match_bisection_oracle():
    phis = equidistant_angles(EquidistantSpiralParams(1, 1, 5))
    assert phis == pytest.approx(ORACLE_ANGLES_P1Q1, abs=1e-10)


def test_equal_chords_p3q3():
    s = gen_equidistant(EquidistantSpiralParams(3, 3, 500))
    chords = [math.dist(a, b) for a, b in zip(s.points, s.points[1:])]
    assert len(chords) == 499
    assert max(abs(c - 3) for c in chords) < 1e-9


@given(st.floats(0.2, 30), st.floats(0.2, 5), st.integers(2, 120))
def test_chords_equal_p_for_any_parameters(p, q, n):
    s = gen_equidistant(EquidistantSpiralParams(p, q, n))
    for a, b in zip(s.points, s.points[1:]):
        assert math.dist(a, b) == pytest.approx(p, rel=1e-9)


@given(st.floats(0.2, 30), st.floats(0.2, 5), st.integers(2, 80))
def test_angles_increase_and_stay_on_spiral(p, q, n):
    params = EquidistantSpiralParams(p, q, n)
    phis = equidistant_angles(params)
    assert all(b > a for a, b in zip(phis, phis[1:]))
    for phi, (x, y) in zip(phis, gen_equidistant(params).points):
        assert math.hypot(x, y) == pytest.approx(q * phi / (2 * math.pi), rel=1e-12, abs=1e-12)


def test_smallest_root_for_large_xi():
    # the chord equals p again at larger angles; the generator must take the first crossing
    p, q = 24.6131, 3.0
    a = q / (2 * math.pi)
    phis = equidistant_angles(EquidistantSpiralParams(p, q, 30))
    for phi0, phi1 in zip(phis, phis[1:]):
        assert phi1 == pytest.approx(_chord_oracle(phi0, a, p), abs=1e-7)


def test_origin_can_be_left_out():
    with_origin = gen_equidistant(EquidistantSpiralParams(1, 1, 11))
    without = gen_equidistant(EquidistantSpiralParams(1, 1, 10, include_origin=False))
    assert without.points == with_origin.points[1:]


@pytest.mark.parametrize("p,q,n", [(0, 1, 10), (-1, 1, 10), (1, 0, 10), (1, 1, 0), (math.nan, 1, 3)])
def test_equidistant_rejects_bad_parameters(p, q, n):
    with pytest.raises(ParameterError):
        EquidistantSpiralParams(p, q, n)


def test_linear_point_counts():
    assert len(gen_linear(LinearSpiralParams(0.5, 30))) == 60
    s = gen_linear(LinearSpiralParams(0.5, 300))
    assert len(s) == 600
    assert math.hypot(*s.points[-1]) == pytest.approx(300, abs=1e-9)


def test_linear_two_terms_by_hand():
    s = gen_linear(LinearSpiralParams(1, 1, include_start=True))
    assert len(s) == 2
    assert s.points[0] == (0.0, 0.0)
    assert s.points[1] == pytest.approx((math.cos(1), math.sin(1)))


@given(st.floats(0.05, 3), st.floats(1, 200))
def test_linear_points_on_spiral(c, d):
    s = gen_linear(LinearSpiralParams(c, d))
    for k, (x, y) in enumerate(s.points, start=1):
        t = k * c
        assert x == pytest.approx(t * math.cos(t), abs=1e-9)
        assert y == pytest.approx(t * math.sin(t), abs=1e-9)
    assert (len(s) + 1) * c > d - 1e-9


def test_linear_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        LinearSpiralParams(0, 10)
    with pytest.raises(ParameterError):
        LinearSpiralParams(1, -1)


def test_square_lattice():
    assert len(gen_square_lattice(1, 1, 1.0)) == 1
    s = gen_square_lattice(3, 3, 2.0)
    assert len(s) == 9
    nn = min(math.dist(a, b) for i, a in enumerate(s.points) for b in s.points[i + 1:])
    assert nn == pytest.approx(2.0)


def test_hex_lattice_nearest_neighbours():
    s = gen_hex_lattice(4, 5, 1.5)
    for i, a in enumerate(s.points):
        d = sorted(math.dist(a, b) for j, b in enumerate(s.points) if j != i)
        assert d[0] == pytest.approx(1.5)
    assert len(gen_hex_lattice(1, 1, 1.0)) == 1


def test_translation():
    base = SeedSet(((0, 0), (1, 0), (0, 1)))
    assert translate_tile(base, 1, 1, 5, 5).points == base.points
    t = translate_tile(base, 2, 1, 100, 100)
    assert len(t) == 6
    assert t.points[3:] == tuple((x + 100, y) for x, y in base.points)


def test_translation_of_high_entropy_pattern():
    base = gen_equidistant(EquidistantSpiralParams(24.6131, 3, 80, include_origin=False))
    t = translate_tile(base, 7, 7, *bbox_offsets(base))
    assert len(t) == 3920


def test_translation_overlap_is_rejected():
    base = SeedSet(((0, 0), (1, 0)))
    with pytest.raises(DuplicatePointError):
        translate_tile(base, 2, 1, 1.0, 1.0)


def test_seedset_validation():
    with pytest.raises(ParameterError):
        SeedSet(((0, 0), (math.inf, 1)))
    with pytest.raises(DuplicatePointError):
        SeedSet(((0, 0), (1, 1), (1 + 1e-12, 1)))


def test_seedset_json_round_trip():
    for s in (gen_equidistant(EquidistantSpiralParams(2, 3, 20, include_origin=False)),
              gen_linear(LinearSpiralParams(0.5, 10, 1.0, True)),
              gen_hex_lattice(3, 3, 1.0),
              translate_tile(gen_square_lattice(2, 2, 1.0), 2, 2, 2.0, 2.0)):
        back = SeedSet.from_dict(s.to_dict())
        assert back == s
        assert provenance_from_dict(s.provenance.to_dict()) == s.provenance
