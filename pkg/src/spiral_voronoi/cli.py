"""Command-line front end: ``spiral-voronoi <command> [flags]``.

Exit codes: 0 ok, 2 usage, 3 I/O, 4 degenerate input, 5 repro tolerance failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .errors import (
    DegenerateInputError,
    DuplicatePointError,
    EmptyStatisticsError,
    ParameterError,
    ParseError,
    SpiralVoronoiError,
    SweepError,
)
from .io_render import ColorMap, load_seeds, render_svg, write_histogram_csv, write_seed_csv
from .seedgen import (
    EquidistantSpiralParams,
    LinearSpiralParams,
    bbox_offsets,
    gen_equidistant,
    gen_linear,
    translate_tile,
)
from .stats import CellFilterPolicy, analyze, polygon_histogram, voronoi_entropy
from .sweep import EQUIDISTANT, LINEAR, SweepSchedule, parse_values, run_sweep, trend_metrics
from .voronoi import Window, build_diagram

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4
EXIT_REPRO = 5


class UsageError(Exception):
    pass


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _clip_arg(text):
    if text is None or text == "none":
        return None
    if text == "auto":
        return "auto"
    return Window.parse(text)


def pattern_seeds(pattern: dict):
    """Seeds from a pattern record such as ``{"mode": "equidistant", "p": 1, ...}``.

    Equidistant patterns here leave out the origin seed, like linear ones
    leave out t = b.
    """
    if pattern["mode"] == EQUIDISTANT:
        return gen_equidistant(EquidistantSpiralParams(pattern["p"], pattern["q"], pattern["n"],
                                                       include_origin=False))
    return gen_linear(LinearSpiralParams(pattern["c"], pattern["d"], pattern.get("b", 0.0)))


def load_reference():
    text = resources.files("spiral_voronoi").joinpath("data/reference.json").read_text("utf-8")
    return json.loads(text)


# -- subcommands ------------------------------------------------------------

def cmd_generate(args):
    if args.mode == EQUIDISTANT:
        if args.p is None or args.q is None or args.n is None:
            raise UsageError("--mode equidistant needs --p, --q and --n")
        params = EquidistantSpiralParams(args.p, args.q, args.n, include_origin=not args.no_origin)
        seeds = gen_equidistant(params)
        summary = f"N={len(seeds)} xi={params.xi:.6g}"
    else:
        if args.c is None or args.d is None:
            raise UsageError("--mode linear needs --c and --d")
        params = LinearSpiralParams(args.c, args.d, args.b, include_start=args.include_start)
        seeds = gen_linear(params)
        summary = f"N={len(seeds)}"
    _write(args.out, write_seed_csv(seeds))
    print(summary, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_analyze(args):
    seeds = load_seeds(args.input)
    diag = build_diagram(seeds, clip=_clip_arg(args.clip))
    report = analyze(diag, args.policy)
    _write(args.out, json.dumps(report, indent=1) + "\n")
    if args.histogram_csv:
        _write(args.histogram_csv, write_histogram_csv(polygon_histogram(diag, args.policy)))
    return EXIT_OK


def cmd_render(args):
    seeds = load_seeds(args.input)
    diag = build_diagram(seeds, clip=_clip_arg(args.clip))
    svg = render_svg(diag, ColorMap(), show_seeds=args.show_seeds, stroke_width=args.stroke_width)
    _write(args.out, svg)
    return EXIT_OK


def _schedule_from_args(args):
    if args.schedule_file:
        with open(args.schedule_file, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(exc.msg, exc.lineno) from None
        return SweepSchedule.from_dict(data)
    policy = CellFilterPolicy.parse(args.policy)
    if args.mode == EQUIDISTANT:
        if args.p is None or args.q is None or args.n is None:
            raise UsageError("equidistant sweep needs --p, --q and --n LIST")
        return SweepSchedule(EQUIDISTANT, parse_values(args.n), p=args.p, q=args.q,
                             include_origin=not args.no_origin, policy=policy)
    if args.c is None or args.d is None:
        raise UsageError("linear sweep needs --c and --d LIST")
    return SweepSchedule(LINEAR, parse_values(args.d), c=args.c, b=args.b,
                         include_start=args.include_start, policy=policy)


def cmd_sweep(args):
    schedule = _schedule_from_args(args)
    series = run_sweep(schedule, workers=args.workers)
    if args.out in (None, "-"):
        sys.stdout.write(series.to_csv())
    else:
        _write(args.out, series.to_csv())
    if len(series) >= 3:
        m = trend_metrics(series)
        print(f"# tail_monotone_fraction={m.tail_monotone_fraction:.4f} "
              f"sign_change_count={m.sign_change_count} "
              f"max_local_rise={m.max_local_rise:.6g}")
    return EXIT_OK


def repro_table1(ref):
    ok = True
    lines = []
    rows = [str(e) for e in ref["rows"]]
    for col in ref["columns"]:
        seeds = pattern_seeds(col["pattern"])
        hist = polygon_histogram(build_diagram(seeds, clip="auto"), ref["policy"])
        tol = col["tolerance_pp"]
        lines.append(f"{col['label']}  (N={len(seeds)}, tolerance +/-{tol} pp)")
        lines.append(f"  {'e':>3} {'NR':>8} {'ref':>8} {'delta':>7}   {'AR':>8} {'ref':>8} {'delta':>7}")
        for e in rows:
            nr, ar = hist.number_ratio(int(e)), hist.area_ratio(int(e))
            dn, da = nr - col["NR"][e], ar - col["AR"][e]
            bad = abs(dn) > tol or abs(da) > tol
            ok &= not bad
            lines.append(f"  {e:>3} {nr:8.3f} {col['NR'][e]:8.3f} {dn:+7.3f}   "
                         f"{ar:8.3f} {col['AR'][e]:8.3f} {da:+7.3f}{'  FAIL' if bad else ''}")
    return ok, lines


def repro_fig9(ref):
    seeds = pattern_seeds(ref["pattern"])
    rep = voronoi_entropy(polygon_histogram(build_diagram(seeds, clip="auto"), ref["policy"]))
    delta = rep.s_vor - ref["S_vor"]
    ok = abs(delta) <= ref["tolerance"] and rep.s_vor > ref["random_pattern_level"]
    return ok, [
        f"S_vor={rep.s_vor:.4f} reference={ref['S_vor']} delta={delta:+.4f} "
        f"(tolerance +/-{ref['tolerance']}, must exceed {ref['random_pattern_level']}) "
        f"classes={rep.n_types}"
    ]


def repro_fig1e(ref):
    base = pattern_seeds(ref["base"])
    ox, oy = bbox_offsets(base)
    seeds = translate_tile(base, ref["kx"], ref["ky"], ox, oy)
    rep = voronoi_entropy(polygon_histogram(build_diagram(seeds, clip="auto"), ref["policy"]))
    ok = rep.s_vor > ref["random_pattern_level"] and rep.n_types >= ref["min_classes"]
    return ok, [
        f"S_vor={rep.s_vor:.4f} classes={rep.n_types} N={len(seeds)}",
        f"  vs reference A {ref['S_vor_ref_a']}: delta={rep.s_vor - ref['S_vor_ref_a']:+.4f}",
        f"  vs reference B {ref['S_vor_ref_b']}: delta={rep.s_vor - ref['S_vor_ref_b']:+.4f}",
        "  note: the two reference values disagree with each other; pass requires "
        f"S_vor > {ref['random_pattern_level']} and >= {ref['min_classes']} classes",
    ]


REPRO = {"table1": repro_table1, "fig9": repro_fig9, "fig1e": repro_fig1e}


def cmd_repro(args):
    ref = load_reference()[args.target]
    ok, lines = REPRO[args.target](ref)
    print("\n".join(lines))
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_REPRO


# -- argument parsing ---------------------------------------------------------

def _spiral_flags(p, list_flags=False):
    kind = str if list_flags else None
    p.add_argument("--mode", choices=[EQUIDISTANT, LINEAR], default=EQUIDISTANT)
    p.add_argument("--p", type=float, help="distance between neighbouring points (mm)")
    p.add_argument("--q", type=float, help="distance between spiral turns (mm)")
    p.add_argument("--n", type=kind or int,
                   help="point count" + (" list, e.g. 20:6000:20" if list_flags else ""))
    p.add_argument("--c", type=float, help="linear spiral parameter step")
    p.add_argument("--d", type=kind or float,
                   help="linear spiral extent" + (" list, e.g. 20:2000:20" if list_flags else ""))
    p.add_argument("--b", type=float, default=0.0, help="linear spiral start (default 0)")
    p.add_argument("--include-start", action="store_true", help="keep the point at t = b")
    p.add_argument("--no-origin", action="store_true", help="leave out the origin seed")


def build_parser():
    parser = argparse.ArgumentParser(prog="spiral-voronoi",
                                     description="Voronoi statistics of spiral point patterns.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a spiral seed pattern as x,y CSV")
    _spiral_flags(g)
    g.add_argument("--out", "-o", help="output CSV (default stdout)")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="JSON report of polygon statistics")
    a.add_argument("input", help="seed file (.csv or .json)")
    a.add_argument("--policy", default="bounded-only",
                   choices=["bounded-only", "clipped", "clipped-window"])
    a.add_argument("--clip", default="auto", help="auto, none, or x0,y0,x1,y1")
    a.add_argument("--histogram-csv", help="also write the histogram table here")
    a.add_argument("--out", "-o")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("render", help="SVG picture of the coloured diagram")
    r.add_argument("input")
    r.add_argument("--clip", default="auto", help="auto, none, or x0,y0,x1,y1")
    r.add_argument("--show-seeds", action="store_true")
    r.add_argument("--stroke-width", type=float)
    r.add_argument("--out", "-o")
    r.set_defaults(func=cmd_render)

    s = sub.add_parser("sweep", help="entropy over a schedule of N or d values")
    _spiral_flags(s, list_flags=True)
    s.add_argument("--policy", default="bounded-only",
                   choices=["bounded-only", "clipped", "clipped-window"])
    s.add_argument("--schedule-file", help="JSON schedule (overrides the flags above)")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_sweep)

    p = sub.add_parser("repro", help="compare against checked-in reference values")
    p.add_argument("target", choices=sorted(REPRO))
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SweepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _code_for(exc.cause)
    except (UsageError, SpiralVoronoiError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _code_for(exc)


def _code_for(exc):
    if isinstance(exc, (ParseError, OSError)):
        return EXIT_IO
    if isinstance(exc, (DegenerateInputError, DuplicatePointError, EmptyStatisticsError)):
        return EXIT_DEGENERATE
    if isinstance(exc, (UsageError, ParameterError)):
        return EXIT_USAGE
    return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
