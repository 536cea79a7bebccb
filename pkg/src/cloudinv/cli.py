"""Command-line front end.

Subcommands:
    coeffs     linear coefficients of a cloud (CSV file or generated)
    transform  apply a 2x2 matrix; closed-form vs direct recomputation
    invariant  kernel values before/after a family member or a matrix
    simulate   the four standard transformations on a generated cloud

Exit codes: 0 success, 2 input/validation error, 3 degenerate image,
4 degenerate generator (every function invariant).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .cloudgen import KINDS, CloudGenSpec, generate_cloud
from .coefficients import (Cloud, LinearCoefficients, is_collinear,
                           linear_coefficients, raw_sums, read_cloud_csv,
                           write_cloud_csv)
from .embedding import generator_for_matrix
from .errors import (CloudInvError, DegenerateGenerator, DegenerateImage,
                     DegenerateTarget)
from .families import (DiagonalFamily, KernelSpec, kernel_value, parse_family)
from .generators import FamilyGenerator
from .transform import (Matrix2, apply_to_cloud, induced_coefficients,
                        parse_matrix)

SCHEMA = "cloud-invariants/1"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE_IMAGE = 3
EXIT_DEGENERATE_GENERATOR = 4

SEED_ENV_VAR = "CLOUD_INV_SEED"

# The four standard demonstration transformations: matrix, kernel spec of the
# one-parameter family it belongs to, and whether to also report H/M^2.
_SIMULATION_CASES = (
    ("diagonal", ("1,0;0,2"), FamilyGenerator(0.0, 0.0, -1.0), True),
    ("upper-triangular", ("1,0.7;0,1"), FamilyGenerator(1.0, 0.0, 0.0), False),
    ("rotation-pi/3", None, FamilyGenerator(1.0, -1.0, 0.0), False),
    ("general", ("0.4,-0.4;-0.05,0.9"), FamilyGenerator(8.0, 1.0, 10.0), False),
)


class _CliInputError(Exception):
    """Bad command-line input not covered by a package exception."""


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError as exc:
        raise _CliInputError(f"bad {SEED_ENV_VAR} value {raw!r}") from exc


def _add_cloud_source(parser: argparse.ArgumentParser, with_coeffs: bool) -> None:
    src = parser.add_argument_group("cloud source")
    src.add_argument("--csv", metavar="FILE", help="read cloud from CSV file")
    src.add_argument("--gen", metavar="KIND", choices=KINDS,
                     help=f"generate a cloud; one of {', '.join(KINDS)}")
    src.add_argument("--n", type=int, default=1000, help="generated point count")
    src.add_argument("--noise", type=float, default=0.05,
                     help="generator noise amplitude")
    src.add_argument("--seed", type=int, default=None,
                     help=f"RNG seed (default: ${SEED_ENV_VAR} or 0)")
    if with_coeffs:
        src.add_argument("--coeffs", metavar="M,H",
                         help="bypass the cloud: supply raw coefficients")


def _parse_coeffs(text: str) -> LinearCoefficients:
    cells = text.split(",")
    if len(cells) != 2:
        raise _CliInputError(f"expected --coeffs M,H, got {text!r}")
    try:
        return LinearCoefficients(float(cells[0]), float(cells[1]))
    except ValueError as exc:
        raise _CliInputError(str(exc)) from exc


def _resolve_cloud(args: argparse.Namespace) -> tuple[Optional[Cloud], dict]:
    """Load or generate the cloud named by the args; returns (cloud, echo)."""
    if args.csv is not None and args.gen is not None:
        raise _CliInputError("give either --csv or --gen, not both")
    if args.csv is not None:
        try:
            cloud = read_cloud_csv(args.csv)
        except OSError as exc:
            raise _CliInputError(f"cannot read {args.csv}: {exc}") from exc
        except ValueError as exc:
            raise _CliInputError(f"bad CSV {args.csv}: {exc}") from exc
        return cloud, {"source": "csv", "path": args.csv, "n": len(cloud)}
    if args.gen is not None:
        seed = args.seed if args.seed is not None else _default_seed()
        try:
            spec = CloudGenSpec(kind=args.gen, n=args.n, noise=args.noise,
                                seed=seed)
        except ValueError as exc:
            raise _CliInputError(str(exc)) from exc
        return generate_cloud(spec), {"source": "generated", "kind": spec.kind,
                                      "n": spec.n, "noise": spec.noise,
                                      "seed": spec.seed}
    return None, {}


def _resolve_coefficients(args: argparse.Namespace,
                          need_cloud: bool = False) -> tuple[
                              LinearCoefficients, Optional[Cloud], dict]:
    coeffs_text = getattr(args, "coeffs", None)
    cloud, echo = _resolve_cloud(args)
    if coeffs_text is not None:
        if cloud is not None:
            raise _CliInputError("--coeffs cannot be combined with a cloud source")
        lc = _parse_coeffs(coeffs_text)
        return lc, None, {"source": "coeffs", "m": lc.m, "h": lc.h}
    if cloud is None:
        raise _CliInputError("no input: give --csv, --gen"
                             + (" or --coeffs" if not need_cloud else ""))
    return linear_coefficients(cloud), cloud, echo


def _drift(before: float, after: float) -> dict:
    absolute = abs(after - before)
    return {"abs": absolute, "rel": absolute / max(1.0, abs(before))}


def _emit(report: dict, as_json: bool, lines: Sequence[str]) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------- commands


def _cmd_coeffs(args: argparse.Namespace) -> int:
    cloud, echo = _resolve_cloud(args)
    if cloud is None:
        raise _CliInputError("no input: give --csv or --gen")
    rs = raw_sums(cloud)
    lc = linear_coefficients(cloud)
    collinear = is_collinear(cloud)
    report = {
        "schema": SCHEMA,
        "command": "coeffs",
        "inputs": echo,
        "raw_sums": {"mn": rs.mn, "hn": rs.hn, "d": rs.d},
        "coefficients": {"m": lc.m, "h": lc.h},
        "collinear": collinear,
    }
    _emit(report, args.json, [
        f"n          {len(cloud)}",
        f"raw sums   mn={rs.mn!r}  hn={rs.hn!r}  d={rs.d!r}",
        f"M          {lc.m!r}",
        f"H          {lc.h!r}",
        f"collinear  {collinear}",
    ])
    return EXIT_OK


def _cmd_transform(args: argparse.Namespace) -> int:
    matrix = parse_matrix(args.matrix)
    lc, cloud, echo = _resolve_coefficients(args)
    after_closed = induced_coefficients(matrix, lc)
    report = {
        "schema": SCHEMA,
        "command": "transform",
        "inputs": {**echo, "matrix": list(matrix.entries())},
        "before": {"m": lc.m, "h": lc.h},
        "after_closed_form": {"m": after_closed.m, "h": after_closed.h},
    }
    lines = [
        f"matrix              {matrix.a!r},{matrix.b!r};{matrix.c!r},{matrix.d!r}",
        f"before              M={lc.m!r}  H={lc.h!r}",
        f"after (closed form) M={after_closed.m!r}  H={after_closed.h!r}",
    ]
    if cloud is not None:
        image = apply_to_cloud(matrix, cloud)
        after_direct = linear_coefficients(image)
        disc = max(abs(after_direct.m - after_closed.m),
                   abs(after_direct.h - after_closed.h))
        report["after_direct"] = {"m": after_direct.m, "h": after_direct.h}
        report["discrepancy"] = disc
        lines += [
            f"after (direct)      M={after_direct.m!r}  H={after_direct.h!r}",
            f"discrepancy         {disc!r}",
        ]
        if args.dump_points:
            write_cloud_csv(image, args.dump_points)
            report["dumped_points"] = args.dump_points
            lines.append(f"transformed cloud written to {args.dump_points}")
    elif args.dump_points:
        raise _CliInputError("--dump-points needs a cloud source, not --coeffs")
    _emit(report, args.json, lines)
    return EXIT_OK


def _phi_list(text: str) -> list[float]:
    try:
        return [float(c) for c in text.split(",") if c.strip() != ""]
    except ValueError as exc:
        raise _CliInputError(f"bad --phi list {text!r}") from exc


def _invariant_family(args: argparse.Namespace, lc: LinearCoefficients,
                      echo: dict) -> tuple[dict, list[str]]:
    family = parse_family(args.family)
    phis = _phi_list(args.phi) if args.phi else [family.identity_parameter()]
    family.identity_parameter()
    spec = family.derivative_coefficients()
    diagonal = isinstance(family, DiagonalFamily)
    before_kernel = kernel_value(spec, lc.m, lc.h)
    evaluations = []
    lines = [
        f"family    {args.family}",
        f"spec      b'={spec.bprime!r}  g'={spec.gprime!r}  delta={spec.delta!r}",
        f"before    M={lc.m!r}  H={lc.h!r}  kernel={before_kernel!r}",
    ]
    if diagonal:
        ratio = lc.h / (lc.m * lc.m)
        lines.append(f"          H/M^2={ratio!r}")
    for phi in phis:
        matrix = family.evaluate(phi)
        after = induced_coefficients(matrix, lc)
        after_kernel = kernel_value(spec, after.m, after.h)
        entry = {
            "phi": phi,
            "after": {"m": after.m, "h": after.h},
            "kernel_before": before_kernel,
            "kernel_after": after_kernel,
            "drift": _drift(before_kernel, after_kernel),
        }
        lines.append(
            f"phi={phi!r}  after M={after.m!r} H={after.h!r}  "
            f"kernel={after_kernel!r}  drift={entry['drift']['abs']!r}")
        if diagonal:
            entry["h_over_m2_before"] = lc.h / (lc.m * lc.m)
            entry["h_over_m2_after"] = after.h / (after.m * after.m)
            lines.append(f"          H/M^2 after={entry['h_over_m2_after']!r}")
        evaluations.append(entry)
    report = {
        "schema": SCHEMA,
        "command": "invariant",
        "inputs": {**echo, "family": args.family,
                   "phi": [e["phi"] for e in evaluations]},
        "spec": {"bprime": spec.bprime, "gprime": spec.gprime,
                 "delta": spec.delta},
        "before": {"m": lc.m, "h": lc.h},
        "kernel_before": before_kernel,
        "evaluations": evaluations,
    }
    return report, lines


def _invariant_matrix(args: argparse.Namespace, lc: LinearCoefficients,
                      echo: dict) -> tuple[dict, list[str]]:
    matrix = parse_matrix(args.matrix)
    spec = generator_for_matrix(matrix)
    # Normalized variant: coefficient vector scaled to unit max-norm, to ease
    # cross-run comparison of kernels from different embeddings.
    norm = max(abs(spec.bprime), abs(spec.gprime), abs(spec.delta))
    normalized = spec.scaled(1.0 / norm)
    after = induced_coefficients(matrix, lc)
    before_kernel = kernel_value(spec, lc.m, lc.h)
    after_kernel = kernel_value(spec, after.m, after.h)
    before_norm = kernel_value(normalized, lc.m, lc.h)
    after_norm = kernel_value(normalized, after.m, after.h)
    report = {
        "schema": SCHEMA,
        "command": "invariant",
        "inputs": {**echo, "matrix": list(matrix.entries())},
        "spec": {"bprime": spec.bprime, "gprime": spec.gprime,
                 "delta": spec.delta},
        "normalized_spec": {"bprime": normalized.bprime,
                            "gprime": normalized.gprime,
                            "delta": normalized.delta},
        "before": {"m": lc.m, "h": lc.h},
        "after": {"m": after.m, "h": after.h},
        "kernel_before": before_kernel,
        "kernel_after": after_kernel,
        "kernel_drift": _drift(before_kernel, after_kernel),
        "normalized_kernel_before": before_norm,
        "normalized_kernel_after": after_norm,
    }
    lines = [
        f"matrix     {matrix.a!r},{matrix.b!r};{matrix.c!r},{matrix.d!r}",
        f"spec       b'={spec.bprime!r}  g'={spec.gprime!r}  delta={spec.delta!r}",
        f"before     M={lc.m!r}  H={lc.h!r}  kernel={before_kernel!r}",
        f"after      M={after.m!r}  H={after.h!r}  kernel={after_kernel!r}",
        f"drift      {report['kernel_drift']['abs']!r}",
        f"normalized kernel before={before_norm!r} after={after_norm!r}",
    ]
    return report, lines


def _cmd_invariant(args: argparse.Namespace) -> int:
    if (args.family is None) == (args.matrix is None):
        raise _CliInputError("give exactly one of --family or --matrix")
    lc, _, echo = _resolve_coefficients(args)
    if args.family is not None:
        report, lines = _invariant_family(args, lc, echo)
    else:
        report, lines = _invariant_matrix(args, lc, echo)
    _emit(report, args.json, lines)
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    lc, cloud, echo = _resolve_coefficients(args)
    cases = []
    lines = [f"before  M={lc.m!r}  H={lc.h!r}"]
    for name, literal, spec, with_ratio in _SIMULATION_CASES:
        if literal is None:
            matrix = Matrix2.rotation(math.pi / 3.0)
        else:
            matrix = parse_matrix(literal)
        after = induced_coefficients(matrix, lc)
        before_kernel = kernel_value(spec, lc.m, lc.h)
        after_kernel = kernel_value(spec, after.m, after.h)
        case = {
            "name": name,
            "matrix": list(matrix.entries()),
            "after": {"m": after.m, "h": after.h},
            "kernel_before": before_kernel,
            "kernel_after": after_kernel,
            "drift": _drift(before_kernel, after_kernel),
        }
        lines.append(
            f"{name:17s} after M={after.m!r} H={after.h!r}  "
            f"kernel {before_kernel!r} -> {after_kernel!r}  "
            f"drift={case['drift']['abs']!r}")
        if with_ratio:
            case["h_over_m2_before"] = lc.h / (lc.m * lc.m)
            case["h_over_m2_after"] = after.h / (after.m * after.m)
            lines.append(
                f"{'':17s} H/M^2 {case['h_over_m2_before']!r} -> "
                f"{case['h_over_m2_after']!r}")
        if cloud is not None:
            image = apply_to_cloud(matrix, cloud)
            direct = linear_coefficients(image)
            case["after_direct"] = {"m": direct.m, "h": direct.h}
            case["closed_vs_direct"] = max(abs(direct.m - after.m),
                                           abs(direct.h - after.h))
        cases.append(case)
    report = {
        "schema": SCHEMA,
        "command": "simulate",
        "inputs": echo,
        "before": {"m": lc.m, "h": lc.h},
        "cases": cases,
    }
    _emit(report, args.json, lines)
    return EXIT_OK


# ------------------------------------------------------------------ driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cloudinv",
        description="Linear-transformation invariants of planar point clouds.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="linear coefficients of a cloud")
    _add_cloud_source(p, with_coeffs=False)
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("transform", help="apply a 2x2 matrix to a cloud")
    _add_cloud_source(p, with_coeffs=True)
    p.add_argument("--matrix", required=True, metavar="a,b;c,d",
                   help="matrix literal (rows separated by ';')")
    p.add_argument("--dump-points", metavar="FILE",
                   help="write the transformed cloud as CSV")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("invariant", help="evaluate an invariant kernel")
    _add_cloud_source(p, with_coeffs=True)
    p.add_argument("--family", metavar="LIT",
                   help="family literal: diag|upper|lower|rot|linear:A0|B")
    p.add_argument("--phi", metavar="LIST",
                   help="comma-separated parameter values")
    p.add_argument("--matrix", metavar="a,b;c,d",
                   help="arbitrary invertible matrix instead of a family")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=_cmd_invariant)

    p = sub.add_parser("simulate",
                       help="run the four standard transformations")
    _add_cloud_source(p, with_coeffs=True)
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=_cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DegenerateGenerator, DegenerateTarget) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE_GENERATOR
    except DegenerateImage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE_IMAGE
    except (_CliInputError, CloudInvError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
