"""Command-line interface: geodesic queries, audits, and SVG figures.

JSON goes to stdout with fixed key order and 9 significant digits, so equal
invocations produce byte-identical output.  Exit codes: 0 success, 1 audit
violations, 2 parse/usage errors (message on stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cutlocus, oracle, planner, render
from . import surface as sf
from .errors import TetracutError

SEED_ENV = "TETRACUT_SEED"


def _default_seed() -> int:
    try:
        return int(os.environ.get(SEED_ENV, "0"))
    except ValueError:
        return 0


def _round9(obj):
    if isinstance(obj, float):
        return float(f"{obj:.9g}")
    if isinstance(obj, dict):
        return {k: _round9(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round9(v) for v in obj]
    return obj


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(_round9(obj)) + "\n")


def _point(text: str) -> sf.SurfacePoint:
    try:
        return sf.parse_point(text)
    except (ValueError, TetracutError) as e:
        raise _ParseError(str(e)) from e


class _ParseError(Exception):
    pass


def _point_json(p: sf.SurfacePoint) -> dict:
    return {"face": p.face_name, "bary": list(p.bary)}


def _geodesic_json(g: oracle.Geodesic) -> dict:
    direction = None
    if g.initial_direction is not None:
        direction = [float(g.initial_direction[0]), float(g.initial_direction[1])]
    return {
        "length": float(g.length),
        "crossings": [{"edge": c.edge, "t": float(c.t)} for c in g.crossings],
        "initial_direction": direction,
        "samples": [
            {"face": sf.FACE_NAMES[int(f)], "bary": [float(x) for x in b]}
            for f, b in zip(g.samples_face, g.samples_bary)
        ],
    }


def _cmd_dist(args) -> int:
    p, q = _point(args.p), _point(args.q)
    _emit({"distance": oracle.distance(p, q, args.depth, args.tol)})
    return 0


def _cmd_mult(args) -> int:
    p, q = _point(args.p), _point(args.q)
    _emit({"multiplicity": oracle.multiplicity(p, q, args.depth, args.tol)})
    return 0


def _cmd_geo(args) -> int:
    p, q = _point(args.p), _point(args.q)
    gs = oracle.min_geodesics(p, q, args.depth, args.tol)
    _emit(
        {
            "distance": gs.distance,
            "multiplicity": gs.multiplicity,
            "geodesics": [_geodesic_json(g) for g in gs.geodesics],
        }
    )
    return 0


def _cmd_cutlocus(args) -> int:
    p = _point(args.p)
    ecl = cutlocus.expanded_cut_locus(p)
    graph = cutlocus.cut_locus_graph(p, args.depth)
    out = {
        "source": str(p),
        "stratum": ecl.stratum,
        "area": ecl.canonical.area(),
        "polygon": [
            {"label": v.label, "xy": [float(v.xy[0]), float(v.xy[1])]}
            for v in ecl.canonical.polygon
        ],
        "nodes": [
            {"label": label, "point": _point_json(node), "multiplicity": mult}
            for label, node, mult in graph.nodes
        ],
        "arcs": [
            {
                "ends": list(arc.ends),
                "multiplicity": arc.interior_multiplicity,
                "points": len(arc.points),
            }
            for arc in graph.arcs
        ],
    }
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render.render_point_diagram(p))
    _emit(out)
    return 0


def _cmd_classify(args) -> int:
    p, q = _point(args.p), _point(args.q)
    _emit(planner.classify(p, q, args.depth).as_dict())
    return 0


def _cmd_plan(args) -> int:
    p, q = _point(args.p), _point(args.q)
    result = planner.phi(p, q, args.depth)
    out = dict(result.label.as_dict())
    out["path"] = _geodesic_json(result.path)
    _emit(out)
    return 0


def _cmd_audit(args) -> int:
    if args.kind == "partition":
        report = planner.partition_audit(args.samples, args.seed, args.depth)
        violations = list(report.violations)
        samples = report.samples
    elif args.kind == "continuity":
        violations = []
        samples = 0
        for cell in ("E1", "E2", "E3", "E5"):
            rep = planner.continuity_audit(cell, args.samples, args.seed, args.depth)
            violations.extend(f"{cell}: {v}" for v in rep.violations)
            samples += rep.samples
    else:
        report = planner.oracle_audit(args.samples, args.seed, args.depth)
        violations = list(report.violations)
        samples = report.samples
    _emit({"violations": violations, "samples": samples, "seed": args.seed})
    return 0 if not violations else 1


def _cmd_render(args) -> int:
    svg = render.render_figure(args.figure, args.x, args.alpha)
    with open(args.svg, "w") as fh:
        fh.write(svg)
    _emit({"figure": args.figure, "svg": args.svg})
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tetracut",
        description="Geodesics, cut loci and motion planning on a regular tetrahedron (edge 2).",
    )

    def common(sp):
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--depth", type=int, default=oracle.DEFAULT_DEPTH)

    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn in (("dist", _cmd_dist), ("geo", _cmd_geo), ("mult", _cmd_mult)):
        sp = sub.add_parser(name, help=f"{name} between two surface points")
        sp.add_argument("p")
        sp.add_argument("q")
        common(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("cutlocus", help="cut locus of a point; optional SVG diagram")
    sp.add_argument("p")
    sp.add_argument("--svg", default=None)
    common(sp)
    sp.set_defaults(fn=_cmd_cutlocus)

    for name, fn in (("classify", _cmd_classify), ("plan", _cmd_plan)):
        sp = sub.add_parser(name, help=f"{name} a pair of surface points")
        sp.add_argument("p")
        sp.add_argument("q")
        common(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("audit", help="run a self-check suite")
    sp.add_argument("kind", choices=("partition", "continuity", "oracle"))
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=_default_seed())
    common(sp)
    sp.set_defaults(fn=_cmd_audit)

    sp = sub.add_parser("render", help="write one of the nine figures as SVG")
    sp.add_argument("figure")
    sp.add_argument("--x", type=float, default=None)
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--svg", required=True)
    common(sp)
    sp.set_defaults(fn=_cmd_render)
    return ap


def run_command(argv: list[str]) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if getattr(args, "depth", oracle.DEFAULT_DEPTH) not in range(2, 13):
        sys.stderr.write("depth must be between 2 and 12\n")
        return 2
    if getattr(args, "tol", 1e-9) <= 0:
        sys.stderr.write("tol must be positive\n")
        return 2
    if getattr(args, "samples", 1) < 1:
        sys.stderr.write("samples must be at least 1\n")
        return 2
    try:
        return args.fn(args)
    except _ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return 2
    except TetracutError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
