"""Command line: build the periodic mesh, run verification suites, render charts.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__

FAULT_ENV = "OCTAWEIER_INJECT_FAULT"


def _write(out, data):
    if out in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"cell counts must be >= 1, got {n}")
    return n


def _k_triple(text):
    try:
        k = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected k1,k2,k3, got {text!r}")
    if len(k) != 3:
        raise argparse.ArgumentTypeError(f"expected three integers, got {text!r}")
    return k


def cmd_build_mesh(args):
    from .lattice_mesh import export_obj, tile_patch
    _write(args.out, export_obj(tile_patch(*args.cells)))
    return 0


def _write_report_dir(report, directory):
    from . import plotting
    from .curve_forms import curve_report
    from .hyperbolic_tiler import develop_flat, generate_tiling, petrie_geodesics, unfold_16gon
    from .lattice_mesh import tile_patch
    from .verify import report_json, tsv_lines

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    (d / "checks.tsv").write_text("\n".join(tsv_lines(report)) + "\n")
    (d / "report.json").write_text(report_json(report) + "\n")
    selected = set(report["suites"])
    if "mesh" in selected:
        plotting.plot_mesh(tile_patch(1, 1, 1), d / "mesh_patch.png")
    if "tiling" in selected:
        chart = unfold_16gon()
        plotting.plot_tiling(generate_tiling(5), d / "tiling.png")
        plotting.plot_chart(chart, petrie_geodesics(chart), d / "sixteen_gon.png")
    if "curve" in selected:
        chart = unfold_16gon()
        for k in ((1, 1, 5), (2, 2, 2), (5, 1, 1)):
            plotting.plot_flat(develop_flat(k, chart), d / ("flat_%d%d%d.png" % k))
        plotting.plot_weights(curve_report()["weierstrass"]["weights"], d / "weierstrass.png")


def cmd_verify(args, parser):
    from .verify import SUITES, report_json, run, tsv_lines
    unknown = [s for s in args.suites if s not in SUITES]
    if unknown:
        parser.error(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
    if args.all or not args.suites:
        suites = list(SUITES)
    else:
        suites = args.suites
    fault = args.inject_fault or os.environ.get(FAULT_ENV) or None
    report = run(suites, fault=fault)
    if args.json:
        print(report_json(report))
    else:
        for line in tsv_lines(report):
            print(line)
    if args.report_dir:
        _write_report_dir(report, args.report_dir)
    if not report["ok"]:
        failing = [c for c in report["checks"] if c["status"] == "fail"]
        for c in failing:
            print(f"FAIL {c['name']}: {json.dumps(c['actual'], sort_keys=True)}", file=sys.stderr)
        return 1
    return 0


def cmd_render(args, parser):
    from .render import svg_chart, svg_flat, svg_tiling
    from .hyperbolic_tiler import (MAX_DEPTH, develop_flat, generate_tiling, petrie_geodesics,
                                   unfold_16gon)
    if args.flat is not None:
        from .curve_forms import translation_structures
        valid = sorted(s.k for s in translation_structures())
        if args.flat not in valid:
            listed = ", ".join(",".join(map(str, k)) for k in valid)
            parser.error(f"--flat {','.join(map(str, args.flat))} is not an eigenform structure; "
                         f"valid triples: {listed}")
        flat = develop_flat(args.flat, unfold_16gon())
        data = flat.to_json().encode() + b"\n" if args.format == "json" else svg_flat(flat)
    elif args.sixteen_gon:
        chart = unfold_16gon()
        chains = petrie_geodesics(chart) if args.petrie else []
        data = chart.to_json().encode() + b"\n" if args.format == "json" else svg_chart(chart, chains)
    else:
        if not 0 <= args.disk <= MAX_DEPTH:
            parser.error(f"--disk depth must lie in [0, {MAX_DEPTH}]")
        tiles = generate_tiling(args.disk)
        if args.format == "json":
            data = json.dumps({"depth": args.disk, "triangles": [
                [[z.real, z.imag] for z in t.corners] for t in tiles]}).encode() + b"\n"
        else:
            data = svg_tiling(tiles)
    _write(args.out, data)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="octaweier", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-mesh", help="write an OBJ of the periodic patch")
    p.add_argument("--cells", nargs=3, type=_positive, default=[1, 1, 1], metavar="N")
    p.add_argument("--out", default="-", help="output path (default stdout)")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="*", metavar="SUITE", help="mesh, map, group, curve or tiling")
    p.add_argument("--all", action="store_true", help="run every suite")
    p.add_argument("--json", action="store_true", help="JSON report instead of TSV rows")
    p.add_argument("--report-dir", help="also write checks.tsv, report.json and PNG figures here")
    p.add_argument("--inject-fault", help=argparse.SUPPRESS)
    p.set_defaults(subparser=p)

    p = sub.add_parser("render", help="draw a tiling, the 16-gon or a flat chart")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--disk", type=int, metavar="DEPTH")
    g.add_argument("--16gon", dest="sixteen_gon", action="store_true")
    g.add_argument("--flat", type=_k_triple, metavar="K1,K2,K3")
    p.add_argument("--petrie", action="store_true", help="dash the Petrie geodesics (with --16gon)")
    p.add_argument("--format", choices=["svg", "json"], default="svg")
    p.add_argument("--out", default="-")
    p.set_defaults(subparser=p)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "build-mesh":
        return cmd_build_mesh(args)
    if args.command == "verify":
        return cmd_verify(args, args.subparser)
    return cmd_render(args, args.subparser)


if __name__ == "__main__":
    sys.exit(main())
