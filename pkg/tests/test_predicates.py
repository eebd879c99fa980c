import itertools
import random
from fractions import Fraction

from hypothesis import given, strategies as st

from spiral_voronoi.predicates import incircle, incircle_sos, orient2d, orient2d_exact

coord = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def sign(v):
    return (v > 0) - (v < 0)


@given(coord, coord, coord, coord, coord, coord)
def test_orient_sign_matches_exact(ax, ay, bx, by, cx, cy):
    assert sign(orient2d(ax, ay, bx, by, cx, cy)) == sign(orient2d_exact(ax, ay, bx, by, cx, cy))


@given(st.floats(min_value=-1, max_value=1), st.floats(min_value=1e-3, max_value=1e3))
def test_orient_nearly_collinear(t, scale):
    # points on the line y = 0.1 x; float rounding leaves them a hair off it
    ax, ay = 0.1 * scale, 0.01 * scale
    bx, by = 12.3 * scale, 1.23 * scale
    cx = ax + t * (bx - ax)
    cy = ay + t * (by - ay)
    assert sign(orient2d(ax, ay, bx, by, cx, cy)) == sign(orient2d_exact(ax, ay, bx, by, cx, cy))


def lifted_incircle(pts, a, b, c, d, eps):
    """In-circle determinant with heights x^2 + y^2 + eps^(index+1), in exact rationals."""
    F = [(Fraction(x), Fraction(y)) for x, y in pts]
    lift = [x * x + y * y + eps ** (i + 1) for i, (x, y) in enumerate(F)]
    (dx, dy), ld = F[d], lift[d]
    rows = [(F[i][0] - dx, F[i][1] - dy, lift[i] - ld) for i in (a, b, c)]
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)


# integer points on the circle of radius 5
CIRCLE = [(5, 0), (4, 3), (3, 4), (0, 5), (-3, 4), (-4, 3), (-5, 0), (-4, -3),
          (-3, -4), (0, -5), (3, -4), (4, -3)]


def test_sos_matches_explicit_perturbation():
    rng = random.Random(7)
    eps = Fraction(1, 10 ** 12)
    checked = 0
    for _ in range(300):
        quad = rng.sample(CIRCLE, 4)
        order = list(range(4))
        rng.shuffle(order)
        pts = [None] * 4
        for slot, p in zip(order, quad):
            pts[slot] = p
        xs = [float(p[0]) for p in pts]
        ys = [float(p[1]) for p in pts]
        for a, b, c, d in itertools.permutations(range(4)):
            if orient2d(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c]) <= 0:
                continue
            assert incircle(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], xs[d], ys[d]) == 0
            expected = sign(lifted_incircle(pts, a, b, c, d, eps))
            assert incircle_sos(xs, ys, a, b, c, d) == expected
            checked += 1
    assert checked > 1000


def test_sos_agrees_with_plain_test_off_the_circle():
    xs = [0.0, 1.0, 0.0, 0.2]
    ys = [0.0, 0.0, 1.0, 0.3]
    assert incircle_sos(xs, ys, 0, 1, 2, 3) == 1
    xs[3], ys[3] = 2.0, 2.0
    assert incircle_sos(xs, ys, 0, 1, 2, 3) == -1
