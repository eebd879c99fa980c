"""Entropy-versus-size sweeps over spiral patterns.

Each schedule entry runs generate -> triangulate -> Voronoi -> clip to the
default window -> histogram -> entropy. Equidistant and linear spirals are
both prefix-stable (the first k seeds of a larger pattern are exactly the
k-seed pattern), so the sequential path generates the largest pattern once
and slices it.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

from .errors import ParameterError, SpiralVoronoiError, SweepError
from .seedgen import (
    EquidistantSpiralParams,
    LinearSpiralParams,
    SeedSet,
    gen_equidistant,
    gen_linear,
)
from .stats import CellFilterPolicy, polygon_histogram, voronoi_entropy
from .voronoi import build_diagram

EQUIDISTANT = "equidistant"
LINEAR = "linear"


@dataclass(frozen=True)
class SweepSchedule:
    """A family of spiral patterns indexed by a control value.

    ``mode="equidistant"`` takes N values with fixed ``p`` and ``q``;
    ``mode="linear"`` takes d values with fixed ``c`` (and ``b``).
    """

    mode: str
    values: Tuple[float, ...]
    p: Optional[float] = None
    q: Optional[float] = None
    c: Optional[float] = None
    b: float = 0.0
    include_origin: bool = True
    include_start: bool = False
    policy: CellFilterPolicy = CellFilterPolicy.BOUNDED_ONLY

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "policy", CellFilterPolicy.parse(self.policy))
        if not self.values:
            raise ParameterError("sweep schedule is empty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ParameterError("sweep values must be strictly increasing")
        if self.mode == EQUIDISTANT:
            if self.p is None or self.q is None:
                raise ParameterError("equidistant sweep needs p and q")
            if any(int(v) != v for v in self.values):
                raise ParameterError("equidistant sweep values are point counts")
            object.__setattr__(self, "values", tuple(int(v) for v in self.values))
            self.params_for(self.values[0])
        elif self.mode == LINEAR:
            if self.c is None:
                raise ParameterError("linear sweep needs c")
            self.params_for(self.values[0])
        else:
            raise ParameterError(f"unknown sweep mode {self.mode!r}")

    def params_for(self, value):
        if self.mode == EQUIDISTANT:
            return EquidistantSpiralParams(self.p, self.q, int(value), self.include_origin)
        return LinearSpiralParams(self.c, float(value), self.b, self.include_start)

    def to_dict(self):
        out = {"mode": self.mode, "values": list(self.values), "policy": self.policy.value}
        if self.mode == EQUIDISTANT:
            out.update(p=self.p, q=self.q, include_origin=self.include_origin)
        else:
            out.update(c=self.c, b=self.b, include_start=self.include_start)
        return out

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        values = data.pop("values", None)
        if values is None:
            raise ParameterError("schedule file needs a 'values' list")
        return cls(values=tuple(values), **data)


@dataclass(frozen=True)
class SweepPoint:
    control: float
    n_actual: int
    s_vor: float


@dataclass(frozen=True)
class SweepSeries:
    points: Tuple[SweepPoint, ...]
    schedule: SweepSchedule

    def __len__(self):
        return len(self.points)

    @property
    def entropies(self):
        return [pt.s_vor for pt in self.points]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["control", "N", "S_vor"])
        for pt in self.points:
            control = int(pt.control) if float(pt.control).is_integer() else pt.control
            writer.writerow([control, pt.n_actual, repr(pt.s_vor)])
        return buf.getvalue()


def entry_entropy(seeds: SeedSet, policy) -> float:
    diag = build_diagram(seeds, clip="auto")
    return voronoi_entropy(polygon_histogram(diag, policy)).s_vor


def evaluate_entry(schedule: SweepSchedule, value) -> SweepPoint:
    """One schedule entry, generated from scratch."""
    try:
        params = schedule.params_for(value)
        seeds = gen_equidistant(params) if schedule.mode == EQUIDISTANT else gen_linear(params)
        return SweepPoint(value, len(seeds), entry_entropy(seeds, schedule.policy))
    except SpiralVoronoiError as exc:
        raise SweepError(value, exc) from exc


def _sequential(schedule: SweepSchedule):
    largest = schedule.params_for(schedule.values[-1])
    try:
        full = gen_equidistant(largest) if schedule.mode == EQUIDISTANT else gen_linear(largest)
    except SpiralVoronoiError as exc:
        raise SweepError(schedule.values[-1], exc) from exc
    out = []
    for value in schedule.values:
        try:
            params = schedule.params_for(value)
            seeds = SeedSet(full.points[:params.n_points], params)
            out.append(SweepPoint(value, len(seeds), entry_entropy(seeds, schedule.policy)))
        except SpiralVoronoiError as exc:
            raise SweepError(value, exc) from exc
    return out


def run_sweep(schedule: SweepSchedule, workers: int = 1) -> SweepSeries:
    """Evaluate every entry of ``schedule``.

    With ``workers > 1`` entries run in a process pool; the result is
    ordered by control value and identical to the sequential run.
    """
    if workers <= 1 or len(schedule.values) == 1:
        return SweepSeries(tuple(_sequential(schedule)), schedule)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        points = list(pool.map(evaluate_entry, [schedule] * len(schedule.values), schedule.values))
    points.sort(key=lambda pt: pt.control)
    return SweepSeries(tuple(points), schedule)


@dataclass(frozen=True)
class TrendMetrics:
    tail_monotone_fraction: float
    sign_change_count: int
    max_local_rise: float

    def to_dict(self):
        return {
            "tail_monotone_fraction": self.tail_monotone_fraction,
            "sign_change_count": self.sign_change_count,
            "max_local_rise": self.max_local_rise,
        }


def trend_metrics(series) -> TrendMetrics:
    """Shape summary of an entropy series.

    ``tail_monotone_fraction`` is the share of non-increasing steps over the
    last 80% of the series, ``sign_change_count`` counts alternations in the
    sign of consecutive steps (flat steps are skipped), and
    ``max_local_rise`` is the largest single increase.

    ``series`` may be a SweepSeries or a plain sequence of values.
    """
    values: Sequence[float] = series.entropies if isinstance(series, SweepSeries) else list(series)
    if len(values) < 3:
        raise ParameterError(f"trend metrics need at least 3 values, got {len(values)}")
    deltas = [b - a for a, b in zip(values, values[1:])]

    tail_start = len(values) - math.ceil(0.8 * len(values))
    tail = deltas[tail_start:]
    tail_fraction = sum(1 for d in tail if d <= 0) / len(tail)

    signs = [1 if d > 0 else -1 for d in deltas if d != 0]
    changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    rise = max((d for d in deltas if d > 0), default=0.0)
    return TrendMetrics(tail_fraction, changes, rise)


def inclusive_range(start, stop, step):
    """start, start + step, ... up to and including stop (within rounding)."""
    if step <= 0:
        raise ParameterError("range step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    if count < 1:
        raise ParameterError(f"empty range {start}:{stop}:{step}")
    values = [start + k * step for k in range(count)]
    if all(float(v).is_integer() for v in values):
        values = [int(v) for v in values]
    return values


def parse_values(text: str):
    """Parse ``"20:6000:20"`` style ranges and plain numbers, comma separated.

    Overlapping segment endpoints (``"20:400:20,400:1000:50"``) are merged.
    """
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ":" in part:
                start, stop, step = (float(x) for x in part.split(":"))
                values.extend(inclusive_range(start, stop, step))
            else:
                v = float(part)
                values.append(int(v) if v.is_integer() else v)
        except ValueError:
            raise ParameterError(f"cannot parse schedule segment {part!r}") from None
    merged = []
    for v in values:
        if not merged or v > merged[-1]:
            merged.append(v)
        elif v < merged[-1]:
            raise ParameterError("schedule values must be increasing")
    return merged


def with_policy(schedule: SweepSchedule, policy) -> SweepSchedule:
    return replace(schedule, policy=CellFilterPolicy.parse(policy))
