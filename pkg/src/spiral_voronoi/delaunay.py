"""Incremental Delaunay triangulation with exact predicates.

Points are inserted Bowyer-Watson style. The region outside the convex hull
is covered by "ghost" triangles that share the virtual vertex ``GHOST``, so
inserting a point outside the hull is the same cavity operation as inserting
one inside it. Cocircular ties are resolved by the symbolic perturbation in
:func:`predicates.incircle_sos`, so the output depends only on the input
points and their order of indices, not on insertion order.

Triangles are kept in flat lists: ``verts[3*t + i]`` is the i-th vertex of
triangle t and ``nbrs[3*t + i]`` is the triangle across the edge opposite
that vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import DegenerateInputError, InternalError
from .predicates import CCW_ERRBOUND, ICC_ERRBOUND, incircle_sos, orient2d
from .seedgen import SeedSet

GHOST = -1


@dataclass(frozen=True)
class Triangulation:
    """Delaunay triangulation of ``points``.

    ``triangles`` holds counter-clockwise index triples. ``neighbors[t][i]``
    is the triangle across the edge opposite ``triangles[t][i]``, or -1 when
    that edge lies on the convex hull.
    """

    points: Tuple[Tuple[float, float], ...]
    triangles: Tuple[Tuple[int, int, int], ...]
    neighbors: Tuple[Tuple[int, int, int], ...]

    def edges(self):
        """Set of undirected Delaunay edges as (i, j) with i < j."""
        out = set()
        for a, b, c in self.triangles:
            for u, v in ((a, b), (b, c), (c, a)):
                out.add((u, v) if u < v else (v, u))
        return out

    def hull_vertices(self):
        hull = set()
        for tri, nb in zip(self.triangles, self.neighbors):
            for i in range(3):
                if nb[i] == -1:
                    hull.add(tri[(i + 1) % 3])
                    hull.add(tri[(i + 2) % 3])
        return hull


def _orient_sign(xs, ys, a, b, c):
    ax, ay, bx, by, cx, cy = xs[a], ys[a], xs[b], ys[b], xs[c], ys[c]
    left = (ax - cx) * (by - cy)
    right = (ay - cy) * (bx - cx)
    det = left - right
    bound = CCW_ERRBOUND * (abs(left) + abs(right))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    det = orient2d(ax, ay, bx, by, cx, cy)
    return (det > 0) - (det < 0)


def _strictly_between(xs, ys, a, b, d):
    """For collinear a, b, d: is d strictly inside segment ab?"""
    if xs[a] != xs[b]:
        lo, hi = sorted((xs[a], xs[b]))
        return lo < xs[d] < hi
    lo, hi = sorted((ys[a], ys[b]))
    return lo < ys[d] < hi


class _Builder:
    def __init__(self, xs, ys):
        self.xs = xs
        self.ys = ys
        self.verts = []
        self.nbrs = []
        self.free = []
        self.mark = []
        self.stamp = 0

    def _new_slot(self):
        if self.free:
            return self.free.pop()
        t = len(self.mark)
        self.verts.extend((0, 0, 0))
        self.nbrs.extend((-1, -1, -1))
        self.mark.append(0)
        return t

    def start(self, a, b, c):
        """Seed the structure with the counter-clockwise triangle abc and its three ghosts."""
        verts, nbrs = self.verts, self.nbrs
        t0 = self._new_slot()
        g_ab, g_bc, g_ca = self._new_slot(), self._new_slot(), self._new_slot()
        verts[0:3] = (a, b, c)
        nbrs[0:3] = (g_bc, g_ca, g_ab)
        # Ghost (x, y, GHOST) covers the half-plane left of hull edge x -> y.
        for g, (x, y) in ((g_ab, (b, a)), (g_bc, (c, b)), (g_ca, (a, c))):
            verts[3 * g:3 * g + 3] = (x, y, GHOST)
            nbrs[3 * g + 2] = t0
        self._relink_ghosts([g_ab, g_bc, g_ca])
        return t0

    def _relink_ghosts(self, ghosts):
        verts, nbrs = self.verts, self.nbrs
        starts = {verts[3 * g]: g for g in ghosts}
        ends = {verts[3 * g + 1]: g for g in ghosts}
        for g in ghosts:
            x, y = verts[3 * g], verts[3 * g + 1]
            nbrs[3 * g] = starts[y]
            nbrs[3 * g + 1] = ends[x]

    def conflicts(self, t, d):
        verts = self.verts
        a, b, c = verts[3 * t], verts[3 * t + 1], verts[3 * t + 2]
        xs, ys = self.xs, self.ys
        if c == GHOST:
            s = _orient_sign(xs, ys, a, b, d)
            if s:
                return s > 0
            return _strictly_between(xs, ys, a, b, d)
        ax, ay = xs[a], ys[a]
        dx, dy = xs[d], ys[d]
        adx, ady = ax - dx, ay - dy
        bdx, bdy = xs[b] - dx, ys[b] - dy
        cdx, cdy = xs[c] - dx, ys[c] - dy
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
        bound = ICC_ERRBOUND * ((abs(bdxcdy) + abs(cdxbdy)) * alift
                                + (abs(cdxady) + abs(adxcdy)) * blift
                                + (abs(adxbdy) + abs(bdxady)) * clift)
        if det > bound:
            return True
        if -det > bound:
            return False
        return incircle_sos(xs, ys, a, b, c, d) > 0

    def locate(self, t, d):
        """Walk from real triangle t toward point d.

        Returns a real triangle whose closure contains d, or the ghost triangle
        entered when leaving the hull.
        """
        verts, nbrs = self.verts, self.nbrs
        xs, ys = self.xs, self.ys
        dx, dy = xs[d], ys[d]
        turn = 0
        for _ in range(4 * len(self.mark) + 16):
            base = 3 * t
            moved = False
            turn = (turn + 1) % 3
            for k in range(3):
                i = (turn + k) % 3
                a = verts[base + (i + 1) % 3]
                b = verts[base + (i + 2) % 3]
                ax, ay, bx, by = xs[a], ys[a], xs[b], ys[b]
                left = (ax - dx) * (by - dy)
                right = (ay - dy) * (bx - dx)
                det = left - right
                bound = CCW_ERRBOUND * (abs(left) + abs(right))
                if det > bound:
                    continue
                if -det <= bound and _orient_sign(xs, ys, a, b, d) >= 0:
                    continue
                t = nbrs[base + i]
                moved = True
                break
            if not moved or verts[3 * t + 2] == GHOST:
                return t
        raise InternalError("point location walk did not terminate")

    def insert(self, d, start):
        verts, nbrs, mark = self.verts, self.nbrs, self.mark
        t0 = self.locate(start, d)
        if not self.conflicts(t0, d):
            raise InternalError(f"located triangle {t0} does not conflict with point {d}")
        self.stamp += 1
        inside = self.stamp
        outside = -inside
        mark[t0] = inside
        cavity = [t0]
        stack = [t0]
        boundary = []
        while stack:
            t = stack.pop()
            base = 3 * t
            for i in range(3):
                nt = nbrs[base + i]
                m = mark[nt]
                if m == inside:
                    continue
                if m != outside:
                    if self.conflicts(nt, d):
                        mark[nt] = inside
                        cavity.append(nt)
                        stack.append(nt)
                        continue
                    mark[nt] = outside
                ob = 3 * nt
                slot = ob if nbrs[ob] == t else (ob + 1 if nbrs[ob + 1] == t else ob + 2)
                boundary.append((verts[base + (i + 1) % 3], verts[base + (i + 2) % 3], slot))

        self.free.extend(cavity)
        by_first = {}
        by_second = {}
        made = []
        for u, v, slot in boundary:
            t = self._new_slot()
            made.append((t, u, v, slot))
            by_first[u] = t
            by_second[v] = t

        last_real = -1
        for t, u, v, slot in made:
            out = slot // 3
            n_u = by_first[v]
            n_v = by_second[u]
            base = 3 * t
            if u == GHOST:
                verts[base:base + 3] = (v, d, GHOST)
                nbrs[base:base + 3] = (n_v, out, n_u)
            elif v == GHOST:
                verts[base:base + 3] = (d, u, GHOST)
                nbrs[base:base + 3] = (out, n_u, n_v)
            else:
                verts[base:base + 3] = (u, v, d)
                nbrs[base:base + 3] = (n_u, n_v, out)
                last_real = t
            mark[t] = 0
        for t, _, _, slot in made:
            nbrs[slot] = t
        return last_real

    def result(self, points):
        verts, nbrs = self.verts, self.nbrs
        free = set(self.free)
        live = [t for t in range(len(self.mark))
                if t not in free and verts[3 * t + 2] != GHOST]
        index = {t: k for k, t in enumerate(live)}
        triangles = []
        neighbors = []
        for t in live:
            base = 3 * t
            triangles.append((verts[base], verts[base + 1], verts[base + 2]))
            neighbors.append(tuple(index.get(nbrs[base + i], -1) for i in range(3)))
        return Triangulation(tuple(points), tuple(triangles), tuple(neighbors))


def delaunay(seeds) -> Triangulation:
    """Delaunay triangulation of a SeedSet (or a sequence of (x, y) points).

    Raises DegenerateInputError for fewer than three seeds or all-collinear
    input; a raw sequence with coincident points raises DuplicatePointError.
    """
    if not isinstance(seeds, SeedSet):
        seeds = SeedSet(tuple(seeds))
    points = seeds.points
    n = len(points)
    if n < 3:
        raise DegenerateInputError(f"need at least 3 seeds, got {n}")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]

    third = -1
    for k in range(2, n):
        if _orient_sign(xs, ys, 0, 1, k):
            third = k
            break
    if third < 0:
        raise DegenerateInputError("all seeds are collinear")

    builder = _Builder(xs, ys)
    if _orient_sign(xs, ys, 0, 1, third) > 0:
        current = builder.start(0, 1, third)
    else:
        current = builder.start(1, 0, third)

    for d in range(2, n):
        if d == third:
            continue
        made = builder.insert(d, current)
        if made >= 0:
            current = made
    return builder.result(points)
