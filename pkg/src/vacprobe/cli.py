"""Command-line driver: ``vacprobe <subcommand> [options]``.

Exit status is 0 on success, 1 on usage or input errors and 2 on numeric
failures.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .accelerated import ratio_closed_form, ratio_series
from .errors import InvalidInputError, NumericError
from .sweep import (SweepSpec, compute_row, csv_text, emit_csv, manifest_path, numeric_settings, row_to_json,
                    run_sweep, write_manifest)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _numeric_flags(p):
    p.add_argument("--eps-ladder", type=float, nargs="+", metavar="EPS",
                   help="regulator ladder in units of the natural scale (time-domain route)")
    p.add_argument("--tol", type=float, help="relative quadrature tolerance")
    p.add_argument("--method", choices=["frequency", "time"], help="integration route")


def _output_flags(p):
    p.add_argument("--out", help="CSV output path (stdout if omitted)")
    p.add_argument("--plot", action="store_true", help="also write a PNG next to the CSV")


def build_parser():
    parser = _Parser(prog="vacprobe", description="Vacuum entanglement between two-level probes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("figure1", help="ratio against gap at fixed separation")
    p.add_argument("--L", type=float, default=1.0)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--omega", type=float, nargs=2, metavar=("MIN", "MAX"), default=(2.0, 16.0))
    p.add_argument("--steps", type=int, default=141)
    _output_flags(p)
    _numeric_flags(p)

    p = sub.add_parser("figure2", help="ratio against separation at fixed gap")
    p.add_argument("--omega", type=float, default=9.5)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--L", type=float, nargs=2, metavar=("MIN", "MAX"), default=(0.6, 2.0))
    p.add_argument("--steps", type=int, default=141)
    _output_flags(p)
    _numeric_flags(p)

    p = sub.add_parser("accelerated", help="uniformly accelerated probes in opposite wedges")
    p.add_argument("--omega", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    p.add_argument("--L", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    p.add_argument("--T", type=float, help="total switching time (default 2*max(6/omega, 3L))")
    _output_flags(p)
    _numeric_flags(p)

    p = sub.add_parser("werner", help="PPT and CHSH along the Werner family")
    p.add_argument("--steps", type=int, default=101)
    _output_flags(p)

    p = sub.add_parser("pair", help="full report for one probe pair, as JSON")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--L", type=float, default=1.0)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--trajectory", choices=["inertial", "hyperbolic"], default="inertial")
    _numeric_flags(p)

    p = sub.add_parser("sweep", help="run a sweep from a JSON config file")
    p.add_argument("--config", required=True)
    _output_flags(p)
    _numeric_flags(p)
    return parser


def _numeric_overrides(args):
    n = {}
    if getattr(args, "eps_ladder", None):
        n["eps_ladder"] = list(args.eps_ladder)
    if getattr(args, "tol", None) is not None:
        n["tol"] = args.tol
    if getattr(args, "method", None):
        n["method"] = args.method
    return n


def _spec_from_args(args):
    n = _numeric_overrides(args)
    c = args.command
    if c == "figure1":
        return SweepSpec("figure1", {"omega": [*args.omega, args.steps]}, {"L": args.L, "T": args.T}, args.out, n)
    if c == "figure2":
        return SweepSpec("figure2", {"L": [*args.L, args.steps]}, {"omega": args.omega, "T": args.T}, args.out, n)
    if c == "accelerated":
        fixed = {"tau_max": args.T / 2} if args.T is not None else {}
        grid = {"omega": {"values": args.omega}, "L": {"values": args.L}}
        return SweepSpec("accelerated", grid, fixed, args.out, n)
    if c == "werner":
        return SweepSpec("werner", {"x": [0.0, 1.0, args.steps]}, {}, args.out, {})
    if c == "sweep":
        spec = SweepSpec.from_json(args.config)
        spec.numeric.update(n)
        if args.out:
            spec.out = args.out
        return spec
    raise InvalidInputError(f"unknown command {c!r}")


def _accelerated_summary(rows):
    cells = []
    for r in rows:
        ratio = math.sqrt(r.ratio12) if r.ratio12 == r.ratio12 else math.nan
        series = ratio_series(r.omega, r.L, 50)
        ref = ratio_closed_form(r.omega, r.L)
        cells.append({"omega": r.omega, "L": r.L, "tau_max": r.T / 2, "ratio_numeric": ratio,
                      "ratio_series": series, "ratio_closed_form": ref,
                      "rel_err_numeric": abs(ratio - ref) / ref, "rel_err_series": abs(series - ref) / ref,
                      "condition12": bool(r.ratio12 > 1)})
    slopes = []
    for om in sorted({c["omega"] for c in cells}):
        pts = [(c["L"], math.log(c["ratio_numeric"])) for c in cells if c["omega"] == om
               and c["ratio_numeric"] > 0]
        if len(pts) >= 2:
            L, y = np.array(pts).T
            s = float(np.polyfit(L, y, 1)[0])
            slopes.append({"omega": om, "slope": s, "expected": math.pi * om / 2,
                           "rel_err": abs(s - math.pi * om / 2) / (math.pi * om / 2)})
    return {"cells": cells, "slopes": slopes}


def _write_outputs(rows, manifest, spec, plot):
    if spec.out:
        manifest["csv_sha256"] = emit_csv(rows, spec.out)
        write_manifest(manifest, manifest_path(spec.out))
        if plot:
            from .plotting import figure_path, plot_rows
            plot_rows(rows, spec.scenario, figure_path(spec.out))
        return True
    if plot:
        raise InvalidInputError("--plot needs --out")
    return False


def _run_pair(args):
    params = {"omega": args.omega, "L": args.L, "T": args.T, "trajectory": args.trajectory}
    if args.trajectory == "hyperbolic":
        del params["T"]
    ns = numeric_settings(_numeric_overrides(args))
    row, amps, _ = compute_row("custom", params, ns)
    config = {**params, "numeric": {"method": amps.method, "tol": ns["quad"].epsrel,
                                    "eps_ladder": list(ns["eps_ladder"]), "tol_eig": ns["tol_eig"]}}
    print(json.dumps(row_to_json(row, config), indent=2))
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "pair":
            return _run_pair(args)
        spec = _spec_from_args(args)
        rows, manifest = run_sweep(spec)
        wrote = _write_outputs(rows, manifest, spec, getattr(args, "plot", False))
        if args.command == "accelerated":
            print(json.dumps(_accelerated_summary(rows), indent=2))
            if not wrote:
                sys.stderr.write(csv_text(rows))
        elif not wrote:
            sys.stdout.write(csv_text(rows))
        if manifest["failures"]:
            sys.stderr.write(f"{len(manifest['failures'])} row(s) failed, see manifest\n")
        return EXIT_OK
    except InvalidInputError as exc:
        sys.stderr.write(f"vacprobe: error: {exc}\n")
        return EXIT_USAGE
    except NumericError as exc:
        sys.stderr.write(f"vacprobe: numeric failure: {exc}\n")
        return EXIT_NUMERIC
    except OSError as exc:
        sys.stderr.write(f"vacprobe: I/O error: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
