import math
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, strategies as st

from spiral_voronoi import (
    EquidistantSpiralParams,
    ParameterError,
    ParseError,
    SeedSet,
    build_diagram,
    gen_equidistant,
    gen_hex_lattice,
    gen_linear,
    LinearSpiralParams,
    polygon_histogram,
)
from spiral_voronoi.io_render import (
    ColorMap,
    color_counts,
    read_seed_csv,
    read_seed_json,
    render_svg,
    write_diagram_json,
    write_histogram_csv,
    write_seed_csv,
    write_seed_json,
)

SVG = "{http://www.w3.org/2000/svg}"


def paths(svg):
    return ET.fromstring(svg.split("\n", 1)[1]).iter(SVG + "path")


def test_color_table():
    cmap = ColorMap()
    names = [cmap.name(n) for n in range(3, 11)]
    assert names == ["magenta", "green", "yellow", "grey", "blue", "brown", "deep-green", "red"]
    assert cmap.name(11) == "white" and cmap.name(2) == "white"


def test_hex_lattice_interior_is_grey():
    d = build_diagram(gen_hex_lattice(12, 10, 1.0), clip="auto")
    svg = render_svg(d)
    interior = {c.seed_index for c in d.cells if c.bounded and not c.clipped}
    fills = {int(p.get("data-seed")): p.get("data-color") for p in paths(svg)}
    assert interior and all(fills[i] == "grey" for i in interior)


def test_single_seed_is_one_rectangle():
    d = build_diagram(SeedSet(((1.0, 1.0),)), clip=(0, 0, 3, 2))
    (p,) = list(paths(render_svg(d)))
    assert p.get("d") == "M 0 0 L 3 0 L 3 2 L 0 2 Z"


def test_defect_pairs_trace_secondary_spiral():
    d = build_diagram(gen_equidistant(EquidistantSpiralParams(1, 1, 600)), clip="auto")
    whole = {c.seed_index: c for c in d.cells if c.bounded and not c.clipped}
    pentas = [c for c in whole.values() if c.edge_count == 5]
    with_hepta = [c for c in pentas
                  if any(j in whole and whole[j].edge_count == 7 for j in c.neighbors)]
    assert len(with_hepta) >= 0.8 * len(pentas)
    counts = color_counts(render_svg(d))
    assert counts["yellow"] >= len(pentas) and counts["blue"] > 0


def test_svg_is_deterministic_and_valid():
    d = build_diagram(gen_equidistant(EquidistantSpiralParams(2, 1, 150)), clip="auto")
    a = render_svg(d, show_seeds=True)
    assert a == render_svg(d, show_seeds=True)
    root = ET.fromstring(a.split("\n", 1)[1])
    assert root.get("version") == "1.1"
    assert len(list(root.iter(SVG + "circle"))) == 150
    w = d.clip_window
    assert root.get("viewBox").split()[2:] == [f"{w.width:.6f}".rstrip("0").rstrip("."),
                                              f"{w.height:.6f}".rstrip("0").rstrip(".")]


def test_unclipped_view_box_has_margin():
    d = build_diagram(SeedSet(((0, 0), (10, 0), (0, 10), (3, 3))))
    x, y, w, h = (float(v) for v in render_svg(d).split('viewBox="')[1].split('"')[0].split())
    assert w > 10 and h > 10


def test_render_empty_diagram_rejected():
    from spiral_voronoi import VoronoiDiagram
    with pytest.raises(ParameterError):
        render_svg(VoronoiDiagram((), ()))


finite = st.floats(allow_nan=False, allow_infinity=False, min_value=-1e300, max_value=1e300)


@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=30, unique=True))
def test_csv_round_trip_is_lossless(points):
    try:
        seeds = SeedSet(tuple(points))
    except ValueError:
        return
    back = read_seed_csv(write_seed_csv(seeds))
    assert back.points == seeds.points


def test_generated_csv_round_trip():
    for s in (gen_equidistant(EquidistantSpiralParams(3, 3, 500)),
              gen_linear(LinearSpiralParams(0.5, 30))):
        assert read_seed_csv(write_seed_csv(s)).points == s.points


def test_csv_errors_name_the_line():
    with pytest.raises(ParseError):
        read_seed_csv("")
    with pytest.raises(ParseError, match="line 1"):
        read_seed_csv("a,b\n1,2\n")
    with pytest.raises(ParseError) as err:
        read_seed_csv("x,y\n1,2\n3,oops\n")
    assert err.value.line == 3
    with pytest.raises(ParseError, match="line 2"):
        read_seed_csv("x,y\n1,2,3\n")
    with pytest.raises(ParseError):
        read_seed_csv("x,y\n")


def test_json_formats():
    s = gen_equidistant(EquidistantSpiralParams(1, 1, 40))
    assert read_seed_json(write_seed_json(s)) == s
    with pytest.raises(ParseError):
        read_seed_json("{not json")
    d = build_diagram(s, clip="auto")
    text = write_diagram_json(d)
    assert '"clip_window"' in text and '"provenance"' in text
    rows = write_histogram_csv(polygon_histogram(d)).splitlines()
    assert rows[0] == "edge_count,count,NR_percent,total_area_mm2,AR_percent"
    assert math.fsum(float(r.split(",")[2]) for r in rows[1:]) == pytest.approx(100, abs=1e-3)
