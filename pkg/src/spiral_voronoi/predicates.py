"""Exact orientation and in-circle predicates.

Both predicates evaluate the determinant in floating point first and accept
the result when it clears Shewchuk's static error bound. Otherwise they fall
back to exact rational arithmetic: every double is a dyadic rational, so
``fractions.Fraction`` gives the exact sign.

``incircle_sos`` adds symbolic perturbation of the lifted coordinate so that
cocircular ties are broken consistently by point index.
"""

from fractions import Fraction

_EPS = 2.0 ** -53
CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS
ICC_ERRBOUND = (10.0 + 96.0 * _EPS) * _EPS


def orient2d_exact(ax, ay, bx, by, cx, cy):
    ax, ay, bx, by, cx, cy = map(Fraction, (ax, ay, bx, by, cx, cy))
    return (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)


def orient2d(ax, ay, bx, by, cx, cy):
    """Positive if a, b, c turn counter-clockwise, negative if clockwise, 0 if collinear.

    The magnitude is only meaningful when the fast path is taken; callers
    should rely on the sign.
    """
    left = (ax - cx) * (by - cy)
    right = (ay - cy) * (bx - cx)
    det = left - right
    bound = CCW_ERRBOUND * (abs(left) + abs(right))
    if det > bound or -det > bound:
        return det
    exact = orient2d_exact(ax, ay, bx, by, cx, cy)
    return (exact > 0) - (exact < 0)


def incircle_exact(ax, ay, bx, by, cx, cy, dx, dy):
    ax, ay, bx, by, cx, cy, dx, dy = map(Fraction, (ax, ay, bx, by, cx, cy, dx, dy))
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    return (alift * (bdx * cdy - cdx * bdy)
            + blift * (cdx * ady - adx * cdy)
            + clift * (adx * bdy - bdx * ady))


def incircle(ax, ay, bx, by, cx, cy, dx, dy):
    """Positive if d lies inside the circle through counter-clockwise a, b, c.

    Negative outside, zero when the four points are exactly cocircular.
    """
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    cdxady = cdx * ady
    adxcdy = adx * cdy
    adxbdy = adx * bdy
    bdxady = bdx * ady
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (alift * (bdxcdy - cdxbdy)
           + blift * (cdxady - adxcdy)
           + clift * (adxbdy - bdxady))
    permanent = ((abs(bdxcdy) + abs(cdxbdy)) * alift
                 + (abs(cdxady) + abs(adxcdy)) * blift
                 + (abs(adxbdy) + abs(bdxady)) * clift)
    bound = ICC_ERRBOUND * permanent
    if det > bound or -det > bound:
        return det
    exact = incircle_exact(ax, ay, bx, by, cx, cy, dx, dy)
    return (exact > 0) - (exact < 0)


def incircle_sos(xs, ys, a, b, c, d):
    """In-circle sign for point indices a, b, c, d with ties broken symbolically.

    Each point's lifted height x^2 + y^2 is raised by an infinitesimal whose
    size decreases with the point index, so the lowest-index point decides an
    exact tie. Never returns 0 for distinct points with a, b, c not collinear.
    """
    det = incircle(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], xs[d], ys[d])
    if det:
        return 1 if det > 0 else -1
    return _incircle_tiebreak(xs, ys, a, b, c, d)


def _incircle_tiebreak(xs, ys, a, b, c, d):
    # Partial derivative of the in-circle determinant with respect to each
    # point's lifted height.
    def d_a():
        return orient2d(xs[d], ys[d], xs[b], ys[b], xs[c], ys[c])

    def d_b():
        return orient2d(xs[a], ys[a], xs[d], ys[d], xs[c], ys[c])

    def d_c():
        return orient2d(xs[a], ys[a], xs[b], ys[b], xs[d], ys[d])

    def d_d():
        return -orient2d(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c])

    for _, term in sorted(((a, d_a), (b, d_b), (c, d_c), (d, d_d)), key=lambda it: it[0]):
        value = term()
        if value:
            return 1 if value > 0 else -1
    return 0
