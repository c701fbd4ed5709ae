"""Command-line entry point: ``itercross <command> ...``.

Every command prints a JSON report (sorted keys). Apart from ``wall_time``
the report is byte-identical across runs with the same inputs. Exit status
is 0 on success, including budget stops, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .certificate import (
    CertificateParams,
    InvalidCount,
    check_certificate,
    square_cover_points,
)
from .closure import ClosureBudgets, ClosureMode, classify_stability, iterate
from .cover import NotFiveConvex, density_profile, region_A
from .geometry import BudgetError
from .graph import check_paths_in_ellipses, dilation, validate_plane, DisconnectedGraph
from .io import (
    PointFileError,
    format_coordinate,
    read_graph,
    read_points,
    write_points,
)
from .svg import render_certificate, render_points


def _pt(p) -> list[str]:
    return [format_coordinate(p[0]), format_coordinate(p[1])]


def _budgets(args) -> ClosureBudgets:
    return ClosureBudgets(args.max_points, args.max_rounds, args.max_bits)


def cmd_iterate(args) -> dict:
    P = read_points(args.input)
    it = iterate(P, ClosureMode(args.mode), _budgets(args), workers=args.workers)
    files = []
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for k, rnd in enumerate(it.rounds):
            path = out / f"P{k}.txt"
            write_points(path, rnd, header=f"round {k}, {len(rnd)} points")
            files.append(str(path))
    res = {
        "mode": it.mode.value,
        "sizes": it.sizes,
        "stop_reason": it.stop_reason,
        "files": files,
    }
    if it.fixed_round is not None:
        res["fixed_round"] = it.fixed_round
        res["message"] = f"fixed point at round {it.fixed_round}"
    else:
        res["message"] = f"stopped by {it.stop_reason} after round {len(it.rounds) - 1}"
    return res


def cmd_classify(args) -> dict:
    P = read_points(args.input)
    v = classify_stability(P, _budgets(args), ClosureMode(args.mode), workers=args.workers)
    res = {"verdict": type(v).__name__, "summary": str(v)}
    if hasattr(v, "k"):
        res["k"] = v.k
        res["fixed_point_size"] = len(v.fixed_point)
        res["fixed_point"] = [_pt(p) for p in v.fixed_point]
    elif hasattr(v, "last_round"):
        res.update(last_round=v.last_round, last_size=v.last_size, reason=v.reason)
    else:
        res["size"] = len(v.points)
    return res


def cmd_dilation(args) -> dict:
    G = read_graph(args.graph)
    violations = validate_plane(G)
    res = {
        "vertices": len(G.vertices),
        "edges": len(G.edges),
        "plane": not violations,
        "violations": [[list(e), list(f)] for e, f in violations],
    }
    if violations and not args.allow_crossings:
        res["dilation"] = None
        return res
    rep = dilation(G)
    i, j = rep.witness_pair
    res["dilation"] = rep.dilation
    res["witness_pair"] = [i, j]
    res["witness_points"] = [_pt(G.vertices[i]), _pt(G.vertices[j])]
    if args.ellipse:
        ell = check_paths_in_ellipses(G, rep.dilation)
        res["ellipse_check"] = {
            "passed": ell.passed,
            "violations": len(ell.violations),
            "worst_slack": ell.worst_slack,
        }
    return res


def cmd_density(args) -> dict:
    P = read_points(args.input)
    prof, rounds = density_profile(P, args.k_max, args.grid, _budgets(args),
                                   workers=args.workers, keep_rounds=True)
    res = {
        "region_A": [_pt(p) for p in prof.region.polygon],
        "grid_pitch": None if prof.pitch is None else format_coordinate(prof.pitch),
        "samples": prof.samples,
        "profile": [[k, r] for k, r in prof.entries],
        "sizes": prof.sizes,
        "stop_reason": prof.stop_reason,
    }
    if args.svg:
        show = rounds[-1]
        Path(args.svg).write_text(render_points(show, region=prof.region.polygon, radius=1.0),
                                  encoding="utf-8")
        res["svg"] = args.svg
    return res


def cmd_certify(args) -> dict:
    params = CertificateParams(args.a, args.A, args.eps, args.delta)
    rep = check_certificate(params)
    res = rep.as_dict()
    for k, v in list(res.items()):
        if isinstance(v, float):
            res[k] = _finite(v)
    if args.sweep_delta:
        lo, hi, n = args.sweep_delta
        n = int(n)
        if n < 2:
            raise ValueError("--sweep-delta needs at least two steps")
        sweep = []
        for i in range(n):
            d = lo + (hi - lo) * i / (n - 1)
            r = check_certificate(CertificateParams(args.a, args.A, args.eps, d))
            sweep.append({"delta": d, "D": _finite(r.D), "edge_error": _finite(r.edge_error), "passed": r.passed})
        res["sweep"] = sweep
    if args.svg:
        Path(args.svg).write_text(render_certificate(params, report=rep), encoding="utf-8")
        res["svg"] = args.svg
    return res


def _finite(v: float):
    return v if math.isfinite(v) else None


def cmd_gen_square(args) -> dict:
    pts, radius = square_cover_points(args.side, args.n)
    if args.out:
        write_points(args.out, pts, header=f"{args.n} points on the boundary of a square of side {args.side}")
    return {
        "side": args.side,
        "n": args.n,
        "points": len(pts),
        "spacing": format_coordinate(2 * radius),
        "cover_radius": format_coordinate(radius),
        "cover_radius_float": float(radius),
        "out": args.out,
    }


def cmd_render(args) -> dict:
    if args.certificate:
        a, A, eps, delta = args.certificate
        svg = render_certificate(CertificateParams(a, A, eps, delta))
        kind = "certificate"
        count = 0
    elif args.graph:
        G = read_graph(args.input)
        svg = render_points(G.vertices, G.sorted_edges())
        kind, count = "graph", len(G.vertices)
    else:
        P = read_points(args.input)
        region = None
        if args.region:
            try:
                region = region_A(P).polygon
            except NotFiveConvex:
                region = None
        svg = render_points(P, region=region)
        kind, count = "points", len(P)
    Path(args.svg).write_text(svg, encoding="utf-8")
    return {"kind": kind, "markers": count, "svg": args.svg}


def _add_budget_flags(p: argparse.ArgumentParser):
    d = ClosureBudgets()
    p.add_argument("--mode", choices=[m.value for m in ClosureMode], default="segments")
    p.add_argument("--max-rounds", type=int, default=d.max_rounds)
    p.add_argument("--max-points", type=int, default=d.max_points)
    p.add_argument("--max-bits", type=int, default=d.max_coordinate_bits)
    p.add_argument("--workers", type=int, default=1, help="processes for pair enumeration")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="itercross", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--report", help="also write the JSON report to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iterate", help="write P^0..P^m of the crossing closure")
    p.add_argument("input")
    p.add_argument("--out", help="directory for P<k>.txt files")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("classify", help="stable / stabilizing / budget exceeded")
    p.add_argument("input")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dilation", help="planarity check and dilation of a graph file")
    p.add_argument("graph")
    p.add_argument("--ellipse", action="store_true", help="also check shortest paths against their ellipses")
    p.add_argument("--allow-crossings", action="store_true")
    p.set_defaults(func=cmd_dilation)

    p = sub.add_parser("density", help="cover radius of region A under P^1..P^k")
    p.add_argument("input")
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--grid", type=str, default=None, help="grid pitch h (default diam(A)/50)")
    p.add_argument("--svg")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("certify", help="evaluate the contraction certificate")
    p.add_argument("a", type=float, nargs="?", default=1.0)
    p.add_argument("A", type=float, nargs="?", default=15.0)
    p.add_argument("eps", type=float, nargs="?", default=0.16)
    p.add_argument("delta", type=float, nargs="?", default=1.0000047)
    p.add_argument("--sweep-delta", type=float, nargs=3, metavar=("LO", "HI", "N"),
                   help="also evaluate N evenly spaced delta values")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gen-square", help="evenly spaced points on a square boundary")
    p.add_argument("side", type=str)
    p.add_argument("n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_square)

    p = sub.add_parser("render", help="SVG of a point file, graph file or certificate")
    p.add_argument("input", nargs="?")
    p.add_argument("--svg", required=True)
    p.add_argument("--graph", action="store_true", help="input is a graph file")
    p.add_argument("--region", action="store_true", help="shade region A for five convex points")
    p.add_argument("--certificate", type=float, nargs=4, metavar=("a", "A", "EPS", "DELTA"))
    p.set_defaults(func=cmd_render)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, dict, argparse.Namespace]:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "render" and not args.certificate and not args.input:
        parser.error("render needs an input file or --certificate")
    start = time.perf_counter()
    report = {"command": args.command, "argv": list(argv) if argv is not None else sys.argv[1:]}
    try:
        report["results"] = args.func(args)
        code = 0
    except (PointFileError, NotFiveConvex, InvalidCount, BudgetError, DisconnectedGraph,
            ValueError, OSError) as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        code = 2
    report["wall_time"] = round(time.perf_counter() - start, 6)
    return code, report, args


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, report, args = run(argv)
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if report.get("error"):
        print(report["error"], file=sys.stderr)
    if args.report:
        Path(args.report).write_text(text + "\n", encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
