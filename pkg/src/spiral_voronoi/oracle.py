"""Brute-force raster reference for Voronoi cells.

Every pixel centre in a window is assigned to its nearest seed (ties go to
the lowest index). Summed pixel areas approximate clipped cell areas, and
4-connected label changes between neighbouring pixels reveal which cells
touch. This shares no code with the triangulation, so it serves as an
independent check on it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from .errors import ParameterError
from .seedgen import SeedSet
from .voronoi import Window


@dataclass(frozen=True)
class GridOracleResult:
    window: Window
    resolution: int
    areas: np.ndarray
    transitions: Dict[Tuple[int, int], int]

    @property
    def pixel_size(self):
        return self.window.width / self.resolution, self.window.height / self.resolution

    def adjacency(self, min_transitions: int = 1):
        """Unordered seed pairs whose regions share at least ``min_transitions`` pixel borders."""
        return {pair for pair, n in self.transitions.items() if n >= min_transitions}


def _labels(points, window, res, chunk):
    px = window.x0 + (np.arange(res) + 0.5) * (window.width / res)
    py = window.y0 + (np.arange(res) + 0.5) * (window.height / res)
    sx, sy = points[:, 0], points[:, 1]
    labels = np.empty((res, res), dtype=np.int64)
    for r0 in range(0, res, chunk):
        rows = py[r0:r0 + chunk]
        dy = (rows[:, None] - sy[None, :]) ** 2            # (rows, seeds)
        dx = (px[:, None] - sx[None, :]) ** 2              # (cols, seeds)
        d = dy[:, None, :] + dx[None, :, :]                # (rows, cols, seeds)
        labels[r0:r0 + chunk] = np.argmin(d, axis=2)       # first minimum wins ties
    return labels


def grid_oracle(seeds: SeedSet, window: Window, resolution: int = 400) -> GridOracleResult:
    if resolution < 100:
        raise ParameterError("grid oracle resolution must be at least 100")
    points = np.asarray(seeds.points, dtype=float)
    chunk = max(1, int(4_000_000 // max(1, resolution * len(points))))
    labels = _labels(points, window, resolution, chunk)

    pix_area = (window.width / resolution) * (window.height / resolution)
    areas = np.bincount(labels.ravel(), minlength=len(points)) * pix_area

    transitions: Counter = Counter()
    for a, b in ((labels[:, :-1], labels[:, 1:]), (labels[:-1, :], labels[1:, :])):
        mask = a != b
        lo = np.minimum(a[mask], b[mask])
        hi = np.maximum(a[mask], b[mask])
        pairs, counts = np.unique(np.stack([lo, hi], axis=1), axis=0, return_counts=True)
        for (i, j), n in zip(pairs.tolist(), counts.tolist()):
            transitions[(i, j)] += n
    return GridOracleResult(window, resolution, areas, dict(transitions))
