"""SVG rendering and the CSV/JSON file formats."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping
from xml.sax.saxutils import quoteattr

from .errors import ParameterError, ParseError
from .seedgen import ExternalDescriptor, SeedSet
from .stats import PolygonHistogram
from .voronoi import VoronoiDiagram

# Names are what matter; the hex values are one fixed choice.
DEFAULT_COLORS = {
    3: ("magenta", "#ff00ff"),
    4: ("green", "#00c000"),
    5: ("yellow", "#ffff00"),
    6: ("grey", "#a0a0a0"),
    7: ("blue", "#0000ff"),
    8: ("brown", "#8b4513"),
    9: ("deep-green", "#006400"),
    10: ("red", "#ff0000"),
}
FALLBACK = ("white", "#ffffff")


@dataclass(frozen=True)
class ColorMap:
    """Edge count -> (colour name, hex). Any count not listed maps to white."""

    table: Mapping[int, tuple] = field(default_factory=lambda: dict(DEFAULT_COLORS))

    def name(self, edge_count) -> str:
        return self.table.get(edge_count, FALLBACK)[0]

    def hex(self, edge_count) -> str:
        return self.table.get(edge_count, FALLBACK)[1]


def _fmt(v) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def view_box(diag: VoronoiDiagram):
    if diag.clip_window is not None:
        w = diag.clip_window
        return w.x0, w.y0, w.width, w.height
    xs = [p[0] for p in diag.points]
    ys = [p[1] for p in diag.points]
    for cell in diag.cells:
        for x, y in cell.vertices:
            xs.append(x)
            ys.append(y)
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0)
    if span == 0:
        span = 1.0
    m = 0.02 * span
    return x0 - m, y0 - m, (x1 - x0) + 2 * m, (y1 - y0) + 2 * m


def render_svg(diag: VoronoiDiagram, cmap: ColorMap = None, show_seeds: bool = False,
               stroke_width: float = None) -> str:
    """SVG 1.1 text with one filled path per closed cell.

    Cells are written in seed order, fill colour by edge count. The y axis
    is flipped so the picture has y pointing up.
    """
    if not diag.cells:
        raise ParameterError("cannot render an empty diagram")
    cmap = cmap or ColorMap()
    vx, vy, vw, vh = view_box(diag)
    if stroke_width is None:
        stroke_width = 0.002 * max(vw, vh)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(vx)} {_fmt(-(vy + vh))} {_fmt(vw)} {_fmt(vh)}">',
        f'<g transform="scale(1,-1)" stroke="#000000" stroke-width="{_fmt(stroke_width)}" '
        'stroke-linejoin="round">',
    ]
    for cell in diag.cells:
        if not cell.closed:
            continue
        d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in cell.vertices) + " Z"
        lines.append(
            f'<path d="{d}" fill="{cmap.hex(cell.edge_count)}" '
            f'data-seed="{cell.seed_index}" data-edges="{cell.edge_count}" '
            f'data-color={quoteattr(cmap.name(cell.edge_count))}/>'
        )
    lines.append("</g>")
    if show_seeds:
        r = 1.5 * stroke_width
        lines.append('<g transform="scale(1,-1)" fill="#000000">')
        for x, y in diag.points:
            lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}"/>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_seed_csv(seeds: SeedSet) -> str:
    buf = io.StringIO()
    buf.write("x,y\n")
    for x, y in seeds.points:
        buf.write(f"{x:.17g},{y:.17g}\n")
    return buf.getvalue()


def read_seed_csv(text: str, source: str = "csv") -> SeedSet:
    """Parse ``x,y`` CSV text. Errors name the 1-based line."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ParseError("empty seed file", 1)
    header = [h.strip().lower() for h in rows[0]]
    if header != ["x", "y"]:
        raise ParseError(f"expected header 'x,y', got {','.join(rows[0])!r}", 1)
    points = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", lineno)
        try:
            x, y = float(row[0]), float(row[1])
        except ValueError:
            raise ParseError(f"non-numeric value in {','.join(row)!r}", lineno) from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParseError("non-finite coordinate", lineno)
        points.append((x, y))
    if not points:
        raise ParseError("seed file has no points", len(rows))
    return SeedSet(tuple(points), ExternalDescriptor(source))


def write_seed_json(seeds: SeedSet) -> str:
    return json.dumps(seeds.to_dict(), indent=1) + "\n"


def read_seed_json(text: str) -> SeedSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(data, dict) or "points" not in data:
        raise ParseError("seed JSON needs a 'points' list")
    return SeedSet.from_dict(data)


def load_seeds(path: str) -> SeedSet:
    """Read seeds from a .json or .csv file (decided by extension)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.lower().endswith(".json"):
        return read_seed_json(text)
    return read_seed_csv(text, source=path)


def write_diagram_json(diag: VoronoiDiagram) -> str:
    data = diag.to_dict()
    data["points"] = [[x, y] for x, y in diag.points]
    if diag.provenance is not None:
        data["provenance"] = diag.provenance.to_dict()
    return json.dumps(data, indent=1) + "\n"


def write_histogram_csv(hist: PolygonHistogram) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["edge_count", "count", "NR_percent", "total_area_mm2", "AR_percent"])
    for e, n, nr, area, ar in hist.rows():
        writer.writerow([e, n, f"{nr:.4f}", f"{area:.6f}", f"{ar:.4f}"])
    return buf.getvalue()


def color_counts(svg_text: str) -> Dict[str, int]:
    """Count rendered cell paths per colour name."""
    counts: Dict[str, int] = {}
    for chunk in svg_text.split('data-color="')[1:]:
        name = chunk.split('"', 1)[0]
        counts[name] = counts.get(name, 0) + 1
    return counts
