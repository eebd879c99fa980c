"""Voronoi diagrams as the dual of the Delaunay triangulation.

A seed strictly inside the convex hull gets a bounded cell whose vertices
are the circumcentres of its incident Delaunay triangles. Hull seeds get
unbounded cells, which carry no geometry until the diagram is clipped to a
window.

When four seeds are exactly cocircular the two triangles sharing their
Delaunay edge have the same circumcentre, so that Voronoi edge has zero
length. Such edges are dropped: they do not add a vertex or an edge to the
cell, and the two seeds are not counted as neighbours.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import FrozenSet, NamedTuple, Optional, Tuple

from .delaunay import Triangulation, delaunay
from .errors import DegenerateInputError, InternalError, ParameterError
from .predicates import ICC_ERRBOUND, incircle_exact
from .seedgen import (
    EquidistantSpiralParams,
    LatticeDescriptor,
    LinearSpiralParams,
    SeedSet,
    TranslationDescriptor,
)


class Window(NamedTuple):
    """Axis-aligned rectangle [x0, x1] x [y0, y1]."""

    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def width(self):
        return self.x1 - self.x0

    @property
    def height(self):
        return self.y1 - self.y0

    @property
    def area(self):
        return self.width * self.height

    def contains(self, x, y):
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def corners(self):
        """Counter-clockwise from the lower-left corner."""
        return [(self.x0, self.y0), (self.x1, self.y0), (self.x1, self.y1), (self.x0, self.y1)]

    @classmethod
    def parse(cls, text):
        try:
            x0, y0, x1, y1 = (float(v) for v in text.split(","))
        except ValueError:
            raise ParameterError(f"window must be 'x0,y0,x1,y1', got {text!r}") from None
        if not (x1 > x0 and y1 > y0):
            raise ParameterError(f"window {text!r} is empty")
        return cls(x0, y0, x1, y1)


@dataclass(frozen=True)
class VoronoiCell:
    seed_index: int
    vertices: Tuple[Tuple[float, float], ...]
    bounded: bool
    neighbors: FrozenSet[int]
    edge_count: Optional[int] = None
    area: Optional[float] = None
    clipped: bool = False

    @property
    def closed(self):
        """True when the cell has polygon geometry (bounded or clipped)."""
        return self.edge_count is not None

    def to_dict(self):
        out = {
            "seed": self.seed_index,
            "bounded": self.bounded,
            "clipped": self.clipped,
            "neighbors": sorted(self.neighbors),
        }
        if self.closed:
            out["vertices"] = [[x, y] for x, y in self.vertices]
            out["edge_count"] = self.edge_count
            out["area"] = self.area
        return out


@dataclass(frozen=True)
class VoronoiDiagram:
    points: Tuple[Tuple[float, float], ...]
    cells: Tuple[VoronoiCell, ...]
    clip_window: Optional[Window] = None
    provenance: object = field(default=None, compare=False)

    def __len__(self):
        return len(self.cells)

    def to_dict(self):
        out = {"cells": [c.to_dict() for c in self.cells]}
        if self.clip_window is not None:
            out["clip_window"] = list(self.clip_window)
        return out


def polygon_area(vertices):
    """Signed shoelace area; positive for counter-clockwise vertices."""
    n = len(vertices)
    if n < 3:
        return 0.0
    x0, y0 = vertices[0]
    total = []
    for k in range(1, n - 1):
        x1, y1 = vertices[k]
        x2, y2 = vertices[k + 1]
        total.append((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))
    return 0.5 * math.fsum(total)


def circumcenter(ax, ay, bx, by, cx, cy):
    """Circumcentre of a non-degenerate triangle.

    Slivers whose float denominator cancels to zero (three nearly collinear
    hull seeds) are redone in exact rational arithmetic.
    """
    ux, uy, vx, vy = bx - ax, by - ay, cx - ax, cy - ay
    d = 2.0 * (ux * vy - uy * vx)
    b2 = ux * ux + uy * uy
    c2 = vx * vx + vy * vy
    if d != 0.0:
        x, y = ax + (vy * b2 - uy * c2) / d, ay + (ux * c2 - vx * b2) / d
        if math.isfinite(x) and math.isfinite(y):
            return x, y
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (ax, ay, bx, by, cx, cy))
    ux, uy, vx, vy = bx - ax, by - ay, cx - ax, cy - ay
    d = 2 * (ux * vy - uy * vx)
    if d == 0:
        raise InternalError("circumcentre of a collinear triple")
    b2 = ux * ux + uy * uy
    c2 = vx * vx + vy * vy
    try:
        return float(ax + (vy * b2 - uy * c2) / d), float(ay + (ux * c2 - vx * b2) / d)
    except OverflowError:
        raise DegenerateInputError("a Voronoi vertex lies outside the floating-point range") from None


def _cocircular(P, a, b, c, d):
    ax, ay = P[a]
    bx, by = P[b]
    cx, cy = P[c]
    dx, dy = P[d]
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (alift * (bdx * cdy - cdx * bdy)
           + blift * (cdx * ady - adx * cdy)
           + clift * (adx * bdy - bdx * ady))
    bound = ICC_ERRBOUND * ((abs(bdx * cdy) + abs(cdx * bdy)) * alift
                            + (abs(cdx * ady) + abs(adx * cdy)) * blift
                            + (abs(adx * bdy) + abs(bdx * ady)) * clift)
    if abs(det) > bound:
        return False
    return incircle_exact(ax, ay, bx, by, cx, cy, dx, dy) == 0


def _degenerate_edges(tri):
    """Flags per (triangle, slot): is the dual Voronoi edge of zero length?"""
    P = tri.points
    T, N = tri.triangles, tri.neighbors
    flags = [[False, False, False] for _ in T]
    for t, (verts, nbrs) in enumerate(zip(T, N)):
        for i in range(3):
            u = nbrs[i]
            if u <= t:
                continue
            other = T[u]
            j = N[u].index(t)
            if _cocircular(P, verts[0], verts[1], verts[2], other[j]):
                flags[t][i] = True
                flags[u][j] = True
    return flags


def voronoi_from_delaunay(tri: Triangulation, provenance=None) -> VoronoiDiagram:
    P = tri.points
    T, N = tri.triangles, tri.neighbors
    centers = {}

    def center(t):
        # only bounded cells need circumcentres; hull slivers may have none in range
        if t not in centers:
            a, b, c = T[t]
            centers[t] = circumcenter(*P[a], *P[b], *P[c])
        return centers[t]

    degenerate = _degenerate_edges(tri)

    start = [-1] * len(P)
    for t, verts in enumerate(T):
        for i, v in enumerate(verts):
            # Prefer a triangle whose clockwise edge at v is on the hull.
            if start[v] < 0 or N[t][(i + 2) % 3] == -1:
                start[v] = t

    cells = []
    for v in range(len(P)):
        t0 = start[v]
        fan = []  # (triangle, is its counter-clockwise edge at v degenerate)
        neighbors = set()
        t = t0
        bounded = True
        i = T[t].index(v)
        if N[t][(i + 2) % 3] == -1:
            bounded = False
            neighbors.add(T[t][(i + 1) % 3])
        while True:
            i = T[t].index(v)
            nxt = N[t][(i + 1) % 3]
            b = T[t][(i + 2) % 3]
            deg = degenerate[t][(i + 1) % 3]
            if not deg:
                neighbors.add(b)
            fan.append((t, deg))
            if nxt == -1:
                bounded = False
                break
            t = nxt
            if t == t0:
                break

        if not bounded:
            cells.append(VoronoiCell(v, (), False, frozenset(neighbors)))
            continue

        # Vertex k of the cell is the circumcentre of the triangle entered
        # across each non-degenerate edge; runs of cocircular triangles share it.
        vertices = []
        m = len(fan)
        for k in range(m):
            t, deg = fan[k]
            if not deg:
                vertices.append(center(fan[(k + 1) % m][0]))
        cells.append(VoronoiCell(
            seed_index=v,
            vertices=tuple(vertices),
            bounded=True,
            neighbors=frozenset(neighbors),
            edge_count=len(vertices),
            area=polygon_area(vertices),
        ))
    return VoronoiDiagram(P, tuple(cells), None, provenance)


def _clip_halfplane(poly, labels, nx, ny, c, label, tol):
    """Keep the part of the polygon with nx*x + ny*y <= c.

    ``labels[k]`` names the edge from ``poly[k]`` to ``poly[k+1]``.
    """
    out, out_labels = [], []
    m = len(poly)
    values = [nx * x + ny * y - c for x, y in poly]
    for k in range(m):
        p, q = poly[k], poly[(k + 1) % m]
        vp, vq = values[k], values[(k + 1) % m]
        p_in, q_in = vp <= tol, vq <= tol
        if p_in:
            out.append(p)
            out_labels.append(labels[k])
            if not q_in:
                s = vp / (vp - vq)
                out.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
                out_labels.append(label)
        elif q_in:
            s = vp / (vp - vq)
            out.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
            out_labels.append(labels[k])
    return out, out_labels


def _drop_short_edges(poly, labels, tol):
    changed = True
    while changed and len(poly) > 2:
        changed = False
        m = len(poly)
        for k in range(m):
            p, q = poly[k], poly[(k + 1) % m]
            if math.hypot(q[0] - p[0], q[1] - p[1]) <= tol:
                # Merge q into p; the edge leaving q now leaves p.
                nxt = (k + 1) % m
                labels[k] = labels[nxt]
                del poly[nxt]
                del labels[nxt]
                changed = True
                break
    return poly, labels


WINDOW_EDGE = "window"


def clip_cell(points, seed_index, neighbors, window: Window):
    """Intersection of one Voronoi cell with ``window``.

    Returns (vertices, edge_labels), where each label is a neighbour seed
    index or ``WINDOW_EDGE``.
    """
    sx, sy = points[seed_index]
    diag = math.hypot(window.width, window.height)
    poly = window.corners()
    labels = [WINDOW_EDGE] * 4
    for j in sorted(neighbors):
        jx, jy = points[j]
        nx, ny = jx - sx, jy - sy
        c = 0.5 * ((jx * jx + jy * jy) - (sx * sx + sy * sy))
        norm = math.hypot(nx, ny)
        poly, labels = _clip_halfplane(poly, labels, nx / norm, ny / norm, c / norm,
                                       j, 1e-13 * diag)
        if not poly:
            break
    return _drop_short_edges(poly, labels, 1e-12 * diag)


def clip_to_window(diag: VoronoiDiagram, window: Window) -> VoronoiDiagram:
    """Close every cell by intersecting it with ``window``.

    Bounded cells lying entirely inside the window are returned unchanged.
    Every other cell is rebuilt as the window cut by the bisectors with its
    Voronoi neighbours and flagged ``clipped`` if a window side survives as
    one of its edges.
    """
    window = Window(*window)
    P = diag.points
    for k, (x, y) in enumerate(P):
        if not window.contains(x, y):
            raise ParameterError(f"clip window {tuple(window)} excludes seed {k} at ({x}, {y})")
    cells = []
    for cell in diag.cells:
        if cell.bounded and not cell.clipped and all(window.contains(x, y) for x, y in cell.vertices):
            cells.append(cell)
            continue
        poly, labels = clip_cell(P, cell.seed_index, cell.neighbors, window)
        nbrs = frozenset(l for l in labels if l != WINDOW_EDGE)
        cells.append(VoronoiCell(
            seed_index=cell.seed_index,
            vertices=tuple(poly),
            bounded=cell.bounded,
            neighbors=nbrs,
            edge_count=len(poly),
            area=polygon_area(poly),
            clipped=WINDOW_EDGE in labels,
        ))
    return VoronoiDiagram(P, tuple(cells), window, diag.provenance)


def default_margin(seeds: SeedSet) -> float:
    """Margin added around the seeds' bounding box for the default clip window.

    Equidistant spirals use max(p, q); linear spirals use the step c of the
    spiral parameter, which keeps the window at the seeds' bounding box for
    practical purposes; lattices use one spacing; tilings use the rule of
    their base pattern.
    Anything else gets 5% of the bounding-box diagonal.
    """
    prov = seeds.provenance
    if isinstance(prov, TranslationDescriptor):
        prov = prov.base
    if isinstance(prov, EquidistantSpiralParams):
        return max(prov.p, prov.q)
    if isinstance(prov, LinearSpiralParams):
        return prov.c
    if isinstance(prov, LatticeDescriptor):
        return prov.spacing
    xmin, ymin, xmax, ymax = seeds.bbox()
    diag = math.hypot(xmax - xmin, ymax - ymin)
    return 0.05 * diag if diag > 0 else 1.0


def default_window(seeds: SeedSet, margin: Optional[float] = None) -> Window:
    if margin is None:
        margin = default_margin(seeds)
    xmin, ymin, xmax, ymax = seeds.bbox()
    return Window(xmin - margin, ymin - margin, xmax + margin, ymax + margin)


def single_seed_diagram(seeds: SeedSet) -> VoronoiDiagram:
    """Diagram of fewer than three seeds, where no triangulation exists.

    One seed owns the whole plane; two seeds split it along their bisector.
    Both cells are unbounded and only become polygons once clipped.
    """
    P = seeds.points
    n = len(P)
    cells = tuple(
        VoronoiCell(k, (), False, frozenset(j for j in range(n) if j != k))
        for k in range(n)
    )
    return VoronoiDiagram(P, cells, None, seeds.provenance)


def build_diagram(seeds: SeedSet, clip=None) -> VoronoiDiagram:
    """Triangulate, take the dual, and optionally clip.

    ``clip`` may be None (no clipping), ``"auto"`` for the default window,
    or a Window / 4-tuple.
    """
    if len(seeds) < 3 and clip is not None:
        diag = single_seed_diagram(seeds)
    else:
        diag = voronoi_from_delaunay(delaunay(seeds), seeds.provenance)
    if clip is None:
        return diag
    window = default_window(seeds) if clip == "auto" else Window(*clip)
    return clip_to_window(diag, window)
