"""Command-line frontend: build, analyze, intersect, hyperbolic, render, verify."""

from __future__ import annotations

import argparse
import json
import sys

from .curve import complement_components, primitive_cycles
from .errors import TropcurveError, UnsupportedConfiguration
from .gf2 import kernel
from .hyperbolic import hyperbolic_wrt_point, hyperbolicity_locus
from .intersect import intersection_components, real_lift
from .io_render import build_scenario, load_spec, render_svg
from .realstruct import (
    count_components_direct,
    count_components_matrix,
    is_admissible,
    is_dividing,
    real_part,
    twist_matrix,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; reserve 2 for unsupported geometry
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_spec(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return load_spec(fh.read())


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fmt_point(p) -> str:
    return f"({p[0]},{p[1]})"


def _dual_key(curve, eid) -> str:
    a, b = sorted(curve.edges[eid].dual)
    return f"{a[0]},{a[1]}|{b[0]},{b[1]}"


def _cmd_build(args) -> int:
    scen = build_scenario(_read_spec(args.spec))
    curve = scen.curve
    cycles = primitive_cycles(curve)
    data = {
        "degree": curve.degree,
        "vertices": len(curve.vertices),
        "bounded_edges": len(curve.bounded_edges),
        "unbounded_edges": len(curve.edges) - len(curve.bounded_edges),
        "cells": len(curve.dual.cells),
        "lattice_points": len(curve.dual.lattice_points),
        "primitive_cycles": len(cycles),
        "honeycomb": curve.is_honeycomb(),
    }
    if curve.degree is not None:
        data["complement_components"] = len(complement_components(curve))
    if args.format == "json":
        _emit(json.dumps(data, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    lines = [f"{k}: {v}" for k, v in sorted(data.items())]
    lines.append("vertex coordinates:")
    for v in curve.vertices:
        lines.append(f"  ({v[0]}, {v[1]})")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_analyze(args) -> int:
    scen = build_scenario(_read_spec(args.spec))
    curve, twists = scen.curve, scen.twists
    admissible = is_admissible(curve, twists)
    dividing = is_dividing(curve, twists) if admissible else False
    k = kernel(twist_matrix(curve, twists)).dim if admissible else None
    matrix_count = count_components_matrix(curve, twists) if admissible else None
    direct = count_components_direct(real_part(curve, scen.phase))
    data = {
        "twisted_edges": sorted(_dual_key(curve, e) for e in twists.edges),
        "twist_count": len(twists.edges),
        "admissible": admissible,
        "dividing": dividing,
        "kernel_dim": k,
        "components_matrix": matrix_count,
        "components_direct": direct.count,
        "kinds": sorted(c.kind for c in direct.components),
    }
    if args.format == "json":
        _emit(json.dumps(data, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    lines = [
        f"twisted edges ({data['twist_count']}): " + " ".join(data["twisted_edges"]),
        f"admissible: {admissible}",
        f"dividing: {dividing}",
        f"kernel dim: {k}",
        f"components (matrix): {matrix_count}",
        f"components (direct): {direct.count}  [{', '.join(data['kinds'])}]",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _lift_data(comp, out):
    loc = None
    if out.locations is not None:
        loc = [[str(p[0]), str(p[1])] for p in out.locations]
    where = comp.point if comp.point is not None else comp.segment[0]
    entry = {
        "kind": comp.kind,
        "multiplicity": comp.multiplicity,
        "at": [str(where[0]), str(where[1])],
        "lift": out.variant,
        "reals": out.reals,
        "pairs": out.pairs,
        "locations": loc,
    }
    if comp.segment is not None:
        entry["segment_end"] = [str(comp.segment[1][0]), str(comp.segment[1][1])]
    if out.possible:
        entry["possible"] = list(out.possible)
    if out.non_real_possible:
        entry["non_real_possible"] = True
    return entry


def _cmd_intersect(args) -> int:
    sa = build_scenario(_read_spec(args.a))
    sb = build_scenario(_read_spec(args.b))
    comps = intersection_components(sa.curve, sb.curve)
    rows = [_lift_data(c, real_lift(c, sa.phase, sb.phase)) for c in comps]
    total = sum(c.multiplicity for c in comps)
    data = {"components": rows, "count": len(rows), "total_multiplicity": total}
    if args.format == "json":
        _emit(json.dumps(data, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    lines = [f"components: {len(rows)}   total multiplicity: {total}"]
    for r in rows:
        loc = f" at ({r['at'][0]}, {r['at'][1]})"
        extra = f" locations={r['locations']}" if r.get("locations") else ""
        poss = f" possible={r['possible']}" if r.get("possible") else ""
        lines.append(
            f"  {r['kind']}{loc} mult={r['multiplicity']} -> {r['lift']}"
            f" reals={r['reals']} pairs={r['pairs']}{extra}{poss}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _report_data(curve, report):
    signed = sorted((list(a), list(e)) for a, e in report.signed_locus)
    per_point = {}
    for (alpha, eps), v in sorted(report.per_point.items()):
        key = f"{alpha[0]},{alpha[1]}|{eps[0]}{eps[1]}"
        per_point[key] = {
            "hyperbolic": v.hyperbolic,
            "failing_condition": v.failing_condition,
            "detail": v.detail,
        }
    return {
        "hyperbolic": report.hyperbolic,
        "kernel_dim": report.kernel_dim,
        "component_count": report.component_count,
        "stable": report.stable,
        "locus": sorted(list(a) for a in report.locus),
        "signed_locus": signed,
        "locus_size": len(report.locus),
        "per_point": per_point,
    }


def _cmd_hyperbolic(args) -> int:
    scen = build_scenario(_read_spec(args.spec))
    curve, phase = scen.curve, scen.phase
    if args.point is not None or scen.query is not None:
        if args.point is not None:
            from .io_render import _parse_point_key

            alpha = _parse_point_key(args.point, "--point")
            eps = tuple(int(b) & 1 for b in args.eps.split(",")) if args.eps else (0, 0)
        else:
            alpha, eps = scen.query
        verdict = hyperbolic_wrt_point(curve, phase, alpha, eps)
        data = {
            "component": list(alpha),
            "eps": list(eps),
            "hyperbolic": verdict.hyperbolic,
            "failing_condition": verdict.failing_condition,
            "detail": verdict.detail,
        }
        if args.format == "json":
            _emit(json.dumps(data, sort_keys=True, indent=2) + "\n", args.out)
        else:
            status = "hyperbolic" if verdict.hyperbolic else f"not hyperbolic (condition {verdict.failing_condition}: {verdict.detail})"
            _emit(f"point {_fmt_point(alpha)} eps={eps}: {status}\n", args.out)
        return 0
    report = hyperbolicity_locus(curve, phase)
    data = _report_data(curve, report)
    if args.format == "json":
        _emit(json.dumps(data, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    lines = [
        f"hyperbolic: {report.hyperbolic}",
        f"kernel dim: {report.kernel_dim}",
        f"real components: {report.component_count}",
        f"stable: {report.stable}",
        f"locus H ({len(report.locus)}): " + " ".join(_fmt_point(a) for a in sorted(report.locus)),
        f"signed locus RH ({len(report.signed_locus)}): "
        + " ".join(f"{_fmt_point(a)}@{e[0]}{e[1]}" for a, e in sorted(report.signed_locus)),
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_render(args) -> int:
    scen = build_scenario(_read_spec(args.spec))
    locus = None
    if args.locus:
        report = hyperbolicity_locus(scen.curve, scen.phase)
        locus = report.locus
    svg = render_svg(scen.curve, phase=scen.phase, twists=scen.twists, locus=locus, delta=scen.delta)
    _emit(svg, args.out)
    return 0


def _cmd_verify(args) -> int:
    from .selfcheck import run_all

    results = run_all(seed=args.seed, trials=args.trials)
    ok = True
    for r in results:
        status = "ok" if r.passed else "MISMATCH"
        sys.stdout.write(f"{r.name}: {status} ({r.detail})\n")
        ok = ok and r.passed
    return 0 if ok else 3


def main(argv=None) -> int:
    parser = _Parser(prog="tropcurve", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("--spec", required=True, help="scenario file (.trop.json)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", default=None, help="write output to a file")

    common(sub.add_parser("build", help="print curve combinatorics"))
    common(sub.add_parser("analyze", help="twists, admissibility, component counts"))
    p = sub.add_parser("intersect", help="classify intersection components of two scenarios")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p = sub.add_parser("hyperbolic", help="hyperbolicity report or a single point verdict")
    common(p)
    p.add_argument("--point", default=None, help='component lattice point "(i,j)"')
    p.add_argument("--eps", default=None, help="symmetry bits b,b")
    p = sub.add_parser("render", help="emit an SVG figure")
    common(p)
    p.add_argument("--locus", action="store_true", help="shade the hyperbolicity locus")
    p = sub.add_parser("verify", help="run the oracle cross-check suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=25)

    args = parser.parse_args(argv)
    handler = {
        "build": _cmd_build,
        "analyze": _cmd_analyze,
        "intersect": _cmd_intersect,
        "hyperbolic": _cmd_hyperbolic,
        "render": _cmd_render,
        "verify": _cmd_verify,
    }[args.command]
    try:
        return handler(args)
    except UnsupportedConfiguration as exc:
        sys.stderr.write(f"unsupported configuration: {exc}\n")
        return 2
    except (TropcurveError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
