"""Seed-point generators: Archimedes spirals, reference lattices, tilings.

Two spiral spacing modes are provided. ``gen_equidistant`` walks the spiral
r = (q / 2 pi) * phi keeping a fixed chord length ``p`` between consecutive
seeds; ``gen_linear`` samples x = t cos t, y = t sin t on an evenly spaced
grid of t, so the spacing between neighbours grows linearly with t.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence, Union

from .errors import DuplicatePointError, InternalError, ParameterError

TWO_PI = 2.0 * math.pi
MAX_ROOT_ITERATIONS = 200
DUPLICATE_RTOL = 1e-9


def _positive_finite(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ParameterError(f"{name} must be a finite positive number, got {value!r}")


@dataclass(frozen=True)
class EquidistantSpiralParams:
    """Chord spacing ``p`` and turn spacing ``q`` (mm) for ``n_points`` seeds.

    With ``include_origin`` false the spiral still starts at the origin, but
    the origin itself is not a seed: the seeds are the next ``n_points``
    positions along the walk.
    """

    p: float
    q: float
    n_points: int
    include_origin: bool = True

    kind = "equidistant"

    def __post_init__(self):
        _positive_finite("p", self.p)
        _positive_finite("q", self.q)
        if not isinstance(self.n_points, int) or self.n_points < 1:
            raise ParameterError(f"n_points must be an integer >= 1, got {self.n_points!r}")

    @property
    def xi(self) -> float:
        return self.p / self.q

    def to_dict(self):
        return {"kind": self.kind, **asdict(self)}


@dataclass(frozen=True)
class LinearSpiralParams:
    c: float
    d: float
    b: float = 0.0
    include_start: bool = False

    kind = "linear"

    def __post_init__(self):
        if not (math.isfinite(self.b) and self.b >= 0):
            raise ParameterError(f"b must be finite and >= 0, got {self.b!r}")
        _positive_finite("c", self.c)
        if not (math.isfinite(self.d) and self.d > self.b):
            raise ParameterError(f"d must be finite and greater than b, got {self.d!r}")

    @property
    def n_steps(self) -> int:
        """Number of steps of size c that fit in [b, d]."""
        ratio = (self.d - self.b) / self.c
        nearest = round(ratio)
        # (30 - 0) / 0.1 evaluates to 299.99999999999994; snap such cases.
        if abs(ratio - nearest) <= 1e-9 * max(1.0, ratio):
            return int(nearest)
        return math.floor(ratio)

    @property
    def n_points(self) -> int:
        return self.n_steps + (1 if self.include_start else 0)

    def to_dict(self):
        return {"kind": self.kind, **asdict(self)}


@dataclass(frozen=True)
class LatticeDescriptor:
    lattice: str
    rows: int
    cols: int
    spacing: float

    kind = "lattice"

    def to_dict(self):
        return {"kind": self.kind, **asdict(self)}


@dataclass(frozen=True)
class TranslationDescriptor:
    base: "Provenance"
    kx: int
    ky: int
    offset_x: float
    offset_y: float

    kind = "translation"

    def to_dict(self):
        return {
            "kind": self.kind,
            "base": self.base.to_dict(),
            "kx": self.kx,
            "ky": self.ky,
            "offset_x": self.offset_x,
            "offset_y": self.offset_y,
        }


@dataclass(frozen=True)
class ExternalDescriptor:
    """Points that came from a file rather than a generator."""

    source: str = "external"

    kind = "external"

    def to_dict(self):
        return {"kind": self.kind, "source": self.source}


Provenance = Union[
    EquidistantSpiralParams,
    LinearSpiralParams,
    LatticeDescriptor,
    TranslationDescriptor,
    ExternalDescriptor,
]


def provenance_from_dict(data) -> Provenance:
    kind = data.get("kind")
    fields = {k: v for k, v in data.items() if k != "kind"}
    try:
        if kind == "equidistant":
            return EquidistantSpiralParams(**fields)
        if kind == "linear":
            return LinearSpiralParams(**fields)
        if kind == "lattice":
            return LatticeDescriptor(**fields)
        if kind == "translation":
            fields["base"] = provenance_from_dict(fields["base"])
            return TranslationDescriptor(**fields)
        if kind == "external":
            return ExternalDescriptor(**fields)
    except TypeError as exc:
        raise ParameterError(f"bad provenance record {data!r}: {exc}") from None
    raise ParameterError(f"unknown provenance kind {kind!r}")


@dataclass(frozen=True)
class SeedSet:
    """Ordered seed points in millimetres plus the record of how they were made.

    Construction validates that all coordinates are finite and that no two
    points coincide within ``1e-9`` times the bounding-box diagonal.
    """

    points: tuple
    provenance: Provenance = ExternalDescriptor()

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        for x, y in pts:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ParameterError(f"non-finite seed coordinate ({x}, {y})")
        object.__setattr__(self, "points", pts)
        _check_duplicates(pts)

    def __len__(self):
        return len(self.points)

    @property
    def xs(self):
        return [p[0] for p in self.points]

    @property
    def ys(self):
        return [p[1] for p in self.points]

    def bbox(self):
        """(xmin, ymin, xmax, ymax) of the points."""
        xs, ys = self.xs, self.ys
        return min(xs), min(ys), max(xs), max(ys)

    def to_dict(self):
        return {
            "provenance": self.provenance.to_dict(),
            "points": [[x, y] for x, y in self.points],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            points=tuple(tuple(p) for p in data["points"]),
            provenance=provenance_from_dict(data.get("provenance", {"kind": "external"})),
        )


def bbox_diagonal(points: Sequence) -> float:
    if not points:
        return 0.0
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return math.hypot(max(xs) - min(xs), max(ys) - min(ys))


def _check_duplicates(points):
    if len(points) < 2:
        return
    tol = DUPLICATE_RTOL * bbox_diagonal(points)
    if tol == 0.0:
        raise DuplicatePointError("all seed points coincide")
    buckets = {}
    for i, (x, y) in enumerate(points):
        key = (math.floor(x / tol), math.floor(y / tol))
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for j in buckets.get((key[0] + dx, key[1] + dy), ()):
                    ox, oy = points[j]
                    if math.hypot(x - ox, y - oy) <= tol:
                        raise DuplicatePointError(
                            f"seeds {j} and {i} coincide at ({x!r}, {y!r})")
        buckets.setdefault(key, []).append(i)


def _chord_sq(r1, a, delta):
    """Squared chord from the spiral point at radius r1 to the one delta radians further."""
    r2 = r1 + a * delta
    s = math.sin(0.5 * delta)
    return (a * delta) ** 2 + 4.0 * r1 * r2 * s * s


def _chord_sq_slope(r1, a, delta):
    r2 = r1 + a * delta
    s = math.sin(0.5 * delta)
    return 2.0 * a * a * delta + 4.0 * a * r1 * s * s + 2.0 * r1 * r2 * math.sin(delta)


def next_angle_increment(r1: float, a: float, p: float) -> float:
    """Smallest angle step from radius ``r1`` whose chord to the spiral equals ``p``.

    The spiral is r = a * phi. From the origin the answer is p / a exactly.
    Otherwise the chord is scanned forward from zero in steps no larger
    than pi/16 to bracket its first crossing of ``p`` and then refined by
    Newton iteration, falling back to bisection whenever a Newton step leaves
    the bracket.
    """
    if r1 == 0.0:
        return p / a
    target = p * p
    step = min(p / max(r1, a), math.pi / 16.0)
    lo, hi = 0.0, step
    # chord >= a * delta, so the first crossing is no later than p / a.
    limit = p / a + step
    while _chord_sq(r1, a, hi) < target:
        lo = hi
        hi += step
        if hi > limit:
            raise InternalError(f"failed to bracket the chord root from r={r1!r}")

    delta = hi
    for _ in range(MAX_ROOT_ITERATIONS):
        g = _chord_sq(r1, a, delta) - target
        if g == 0.0:
            return delta
        if g < 0.0:
            lo = delta
        else:
            hi = delta
        slope = _chord_sq_slope(r1, a, delta)
        candidate = delta - g / slope if slope > 0.0 else lo - 1.0
        if not (lo < candidate < hi):
            candidate = 0.5 * (lo + hi)
        if abs(candidate - delta) <= 1e-12 * candidate or hi - lo <= 1e-12 * hi:
            return candidate
        delta = candidate
    raise InternalError(f"angle root-finder did not converge from r={r1!r}")


def equidistant_angles(params: EquidistantSpiralParams):
    """Polar angles of the equidistant seeds, starting at 0."""
    a = params.q / TWO_PI
    phi = 0.0
    angles = [phi]
    total = params.n_points if params.include_origin else params.n_points + 1
    for _ in range(total - 1):
        phi += next_angle_increment(a * phi, a, params.p)
        angles.append(phi)
    return angles if params.include_origin else angles[1:]


def gen_equidistant(params: EquidistantSpiralParams) -> SeedSet:
    """Seeds on r = (q / 2 pi) phi with constant chord length p between neighbours.

    The walk starts at the origin, which is the first seed unless
    ``params.include_origin`` is false.
    """
    a = params.q / TWO_PI
    points = []
    for phi in equidistant_angles(params):
        r = a * phi
        points.append((r * math.cos(phi), r * math.sin(phi)))
    return SeedSet(tuple(points), params)


def gen_linear(params: LinearSpiralParams) -> SeedSet:
    """Seeds at (t cos t, t sin t) for t = b + n c, up to d."""
    first = 0 if params.include_start else 1
    points = []
    for n in range(first, params.n_steps + 1):
        t = params.b + n * params.c
        points.append((t * math.cos(t), t * math.sin(t)))
    return SeedSet(tuple(points), params)


def _check_lattice_args(rows, cols, spacing):
    for name, value in (("rows", rows), ("cols", cols)):
        if not isinstance(value, int) or value < 1:
            raise ParameterError(f"{name} must be an integer >= 1, got {value!r}")
    _positive_finite("spacing", spacing)


def gen_square_lattice(rows: int, cols: int, spacing: float) -> SeedSet:
    _check_lattice_args(rows, cols, spacing)
    points = tuple((j * spacing, i * spacing) for i in range(rows) for j in range(cols))
    return SeedSet(points, LatticeDescriptor("square", rows, cols, float(spacing)))


def gen_hex_lattice(rows: int, cols: int, spacing: float) -> SeedSet:
    """Triangular lattice of seeds on a rhombic patch.

    Row i is shifted by i/2 spacings, so every side of the patch runs along
    a lattice line. Each seed off the hull then has all six lattice
    neighbours, and every bounded cell is a regular hexagon of side
    spacing / sqrt(3). (A rectangular patch with alternating row shifts
    would leave pentagons along its zigzag sides.)
    """
    _check_lattice_args(rows, cols, spacing)
    row_height = spacing * math.sqrt(3.0) / 2.0
    points = tuple(
        ((j + 0.5 * i) * spacing, i * row_height)
        for i in range(rows)
        for j in range(cols)
    )
    return SeedSet(points, LatticeDescriptor("hex", rows, cols, float(spacing)))


def translate_tile(base: SeedSet, kx: int, ky: int,
                   offset_x: float, offset_y: float) -> SeedSet:
    """kx * ky copies of ``base`` on a rectangular grid of offsets.

    Copies are ordered with x varying fastest, each copy keeping the base
    order. Raises DuplicatePointError if copies overlap.
    """
    for name, value in (("kx", kx), ("ky", ky)):
        if not isinstance(value, int) or value < 1:
            raise ParameterError(f"{name} must be an integer >= 1, got {value!r}")
    _positive_finite("offset_x", offset_x)
    _positive_finite("offset_y", offset_y)
    points = tuple(
        (x + ix * offset_x, y + iy * offset_y)
        for iy in range(ky)
        for ix in range(kx)
        for x, y in base.points
    )
    return SeedSet(points, TranslationDescriptor(base.provenance, kx, ky,
                                                 float(offset_x), float(offset_y)))


def bbox_offsets(base: SeedSet):
    """Default tiling offsets: the base pattern's bounding-box width and height."""
    xmin, ymin, xmax, ymax = base.bbox()
    return xmax - xmin, ymax - ymin
