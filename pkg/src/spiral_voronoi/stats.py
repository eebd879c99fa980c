"""Polygon statistics of a Voronoi diagram.

Every statistic runs over the set of cells picked by a
:class:`CellFilterPolicy`:

``bounded-only``
    Cells that are bounded and were not cut by the diagram's clip window
    (when it has one). These are the complete polygons of a finite pattern.
``clipped-window``
    Every cell of a diagram that has been clipped to a window, including
    the fringe cells closed off by the window sides.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List

from .errors import EmptyStatisticsError, InsufficientDataError, ParameterError
from .voronoi import VoronoiDiagram

LEWIS_MIN_CELLS = 5


class CellFilterPolicy(str, Enum):
    BOUNDED_ONLY = "bounded-only"
    CLIPPED_WINDOW = "clipped-window"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"clipped": cls.CLIPPED_WINDOW, "bounded": cls.BOUNDED_ONLY}
        if value in aliases:
            return aliases[value]
        try:
            return cls(value)
        except ValueError:
            raise ParameterError(f"unknown cell filter policy {value!r}") from None


def select_cells(diag: VoronoiDiagram, policy=CellFilterPolicy.BOUNDED_ONLY):
    policy = CellFilterPolicy.parse(policy)
    if policy is CellFilterPolicy.BOUNDED_ONLY:
        return [c for c in diag.cells if c.bounded and not c.clipped]
    if diag.clip_window is None:
        raise ParameterError("clipped-window policy needs a diagram clipped to a window")
    return list(diag.cells)


def _require(cells):
    if not cells:
        raise EmptyStatisticsError("the cell filter policy selected no cells")
    return cells


@dataclass(frozen=True)
class PolygonHistogram:
    """Per-edge-count cell counts and total areas (mm^2)."""

    counts: Dict[int, int]
    areas: Dict[int, float]

    @property
    def total_count(self) -> int:
        return sum(self.counts.values())

    @property
    def total_area(self) -> float:
        return math.fsum(self.areas.values())

    @property
    def edge_counts(self) -> List[int]:
        return sorted(self.counts)

    def fraction(self, e) -> float:
        return self.counts.get(e, 0) / self.total_count

    def number_ratio(self, e) -> float:
        """NR_e, percent of cells with e edges."""
        return 100.0 * self.fraction(e)

    def area_ratio(self, e) -> float:
        """AR_e, percent of the total area covered by e-sided cells."""
        total = self.total_area
        return 100.0 * self.areas.get(e, 0.0) / total if total > 0 else 0.0

    def fractions(self) -> Dict[int, float]:
        n = self.total_count
        return {e: self.counts[e] / n for e in self.edge_counts}

    def rows(self):
        for e in self.edge_counts:
            yield e, self.counts[e], self.number_ratio(e), self.areas[e], self.area_ratio(e)

    def to_dict(self):
        return {
            "total_count": self.total_count,
            "total_area_mm2": self.total_area,
            "classes": [
                {"edge_count": e, "count": n, "NR_percent": nr,
                 "total_area_mm2": a, "AR_percent": ar}
                for e, n, nr, a, ar in self.rows()
            ],
        }


def polygon_histogram(diag: VoronoiDiagram, policy=CellFilterPolicy.BOUNDED_ONLY) -> PolygonHistogram:
    cells = _require(select_cells(diag, policy))
    counts = defaultdict(int)
    area_terms = defaultdict(list)
    for cell in cells:
        counts[cell.edge_count] += 1
        area_terms[cell.edge_count].append(cell.area)
    return PolygonHistogram(
        counts=dict(sorted(counts.items())),
        areas={e: math.fsum(area_terms[e]) for e in sorted(area_terms)},
    )


@dataclass(frozen=True)
class EntropyReport:
    s_vor: float
    fractions: Dict[int, float]
    n_types: int

    def to_dict(self):
        return {
            "S_vor": self.s_vor,
            "n_types": self.n_types,
            "fractions": {str(e): p for e, p in self.fractions.items()},
        }


def shannon_entropy(fractions) -> float:
    """-sum p ln p over the given fractions, with 0 ln 0 taken as 0."""
    value = -math.fsum(p * math.log(p) for p in fractions if p > 0.0)
    # A single class gives -(1 * ln 1) = -0.0.
    return value + 0.0


def voronoi_entropy(hist: PolygonHistogram) -> EntropyReport:
    fractions = hist.fractions()
    return EntropyReport(
        s_vor=shannon_entropy(fractions.values()),
        fractions=fractions,
        n_types=sum(1 for p in fractions.values() if p > 0),
    )


@dataclass(frozen=True)
class AboavRow:
    n: int
    m_n: float
    samples: int

    @property
    def predicted(self) -> float:
        return aboav_prediction(self.n)


def aboav_prediction(n) -> float:
    """Mean edge count of the neighbours of an n-sided cell in a random mosaic."""
    return 5.0 + 8.0 / n


@dataclass(frozen=True)
class AboavReport:
    rows: Dict[int, AboavRow]

    def to_dict(self):
        return {
            "rows": [
                {"n": r.n, "m_n": r.m_n, "samples": r.samples, "predicted": r.predicted}
                for r in self.rows.values()
            ]
        }


def aboav_report(diag: VoronoiDiagram, policy=CellFilterPolicy.BOUNDED_ONLY) -> AboavReport:
    """Observed m_n: the mean, over n-sided cells, of their neighbours' mean edge count.

    Neighbours outside the policy selection are ignored; a cell with no
    selected neighbours does not contribute.
    """
    cells = _require(select_cells(diag, policy))
    sides = {c.seed_index: c.edge_count for c in cells}
    per_class = defaultdict(list)
    for cell in cells:
        inner = [sides[j] for j in sorted(cell.neighbors) if j in sides]
        if inner:
            per_class[cell.edge_count].append(math.fsum(inner) / len(inner))
    rows = {
        n: AboavRow(n, math.fsum(vals) / len(vals), len(vals))
        for n, vals in sorted(per_class.items())
    }
    return AboavReport(rows)


@dataclass(frozen=True)
class LewisFit:
    """Least-squares line A_n = slope * n + intercept over classes with enough cells.

    For an exact Lewis law A_n = alpha (n - 2), ``slope`` is alpha and
    ``intercept`` is -2 alpha.
    """

    mean_areas: Dict[int, float]
    counts: Dict[int, int]
    slope: float
    intercept: float
    r_squared: float
    fitted_classes: List[int] = field(default_factory=list)

    @property
    def alpha(self) -> float:
        return self.slope

    @property
    def overall_mean_area(self) -> float:
        total = sum(self.counts.values())
        return math.fsum(self.mean_areas[n] * self.counts[n] for n in self.counts) / total

    def to_dict(self):
        return {
            "classes": [
                {"n": n, "mean_area_mm2": self.mean_areas[n], "count": self.counts[n]}
                for n in sorted(self.mean_areas)
            ],
            "alpha_mm2": self.slope,
            "intercept_mm2": self.intercept,
            "r_squared": self.r_squared,
            "fitted_classes": self.fitted_classes,
            "overall_mean_area_mm2": self.overall_mean_area,
        }


def lewis_means(diag: VoronoiDiagram, policy=CellFilterPolicy.BOUNDED_ONLY):
    """Per edge count: (mean cell area, number of cells)."""
    cells = _require(select_cells(diag, policy))
    areas = defaultdict(list)
    for cell in cells:
        areas[cell.edge_count].append(cell.area)
    return {n: (math.fsum(v) / len(v), len(v)) for n, v in sorted(areas.items())}


def lewis_fit(diag: VoronoiDiagram, policy=CellFilterPolicy.BOUNDED_ONLY,
              min_cells: int = LEWIS_MIN_CELLS) -> LewisFit:
    per_class = lewis_means(diag, policy)
    means = {n: m for n, (m, _) in per_class.items()}
    counts = {n: k for n, (_, k) in per_class.items()}
    fitted = [n for n, k in counts.items() if k >= min_cells]
    if len(fitted) < 2:
        raise InsufficientDataError(
            f"Lewis fit needs two edge-count classes with >= {min_cells} cells, "
            f"got {len(fitted)}", means)
    xs = [float(n) for n in fitted]
    ys = [means[n] for n in fitted]
    x_bar = math.fsum(xs) / len(xs)
    y_bar = math.fsum(ys) / len(ys)
    sxx = math.fsum((x - x_bar) ** 2 for x in xs)
    sxy = math.fsum((x - x_bar) * (y - y_bar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = y_bar - slope * x_bar
    ss_tot = math.fsum((y - y_bar) ** 2 for y in ys)
    ss_res = math.fsum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return LewisFit(means, counts, slope, intercept, r_squared, fitted)


@dataclass(frozen=True)
class DefectSummary:
    penta_count: int
    hepta_count: int
    adjacent_5_7_pairs: int

    def to_dict(self):
        return {
            "penta_count": self.penta_count,
            "hepta_count": self.hepta_count,
            "adjacent_5_7_pairs": self.adjacent_5_7_pairs,
        }


def defect_pairs(diag: VoronoiDiagram, policy=CellFilterPolicy.BOUNDED_ONLY) -> DefectSummary:
    cells = _require(select_cells(diag, policy))
    sides = {c.seed_index: c.edge_count for c in cells}
    pentas = [c for c in cells if c.edge_count == 5]
    heptas = sum(1 for c in cells if c.edge_count == 7)
    pairs = sum(1 for c in pentas for j in c.neighbors if sides.get(j) == 7)
    return DefectSummary(len(pentas), heptas, pairs)


def analyze(diag: VoronoiDiagram, policy=CellFilterPolicy.BOUNDED_ONLY) -> dict:
    """All reports for one diagram as a JSON-ready dict."""
    policy = CellFilterPolicy.parse(policy)
    hist = polygon_histogram(diag, policy)
    report = {
        "policy": policy.value,
        "clip_window": list(diag.clip_window) if diag.clip_window else None,
        "n_seeds": len(diag.cells),
        "histogram": hist.to_dict(),
        "entropy": voronoi_entropy(hist).to_dict(),
        "aboav": aboav_report(diag, policy).to_dict(),
        "defects": defect_pairs(diag, policy).to_dict(),
    }
    try:
        report["lewis"] = lewis_fit(diag, policy).to_dict()
    except InsufficientDataError as exc:
        report["lewis"] = {
            "error": str(exc),
            "classes": [{"n": n, "mean_area_mm2": m} for n, m in sorted(exc.means.items())],
        }
    if diag.provenance is not None:
        report["provenance"] = diag.provenance.to_dict()
    return report


def summarize(hist: PolygonHistogram) -> str:
    parts = [f"{e}:{hist.number_ratio(e):.2f}%" for e in hist.edge_counts]
    return " ".join(parts)
