"""Command line entry point.

Exit codes: 0 on success, 2 for configuration problems, 3 for numerical
failures.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .analysis import run_analysis
from .config import CASE_ONE, CASE_ZERO, load_config
from .errors import MechanismError, ParseError, ValidationError
from .output import emit_tables, render_svg

_CASE_FLAGS = {"auto": "auto", "zero": CASE_ZERO, "one-nonzero": CASE_ONE}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solve",
        description="Equilibrium configurations of a planar three-spring "
                    "platform pressed against a rigid surface.")
    parser.add_argument("--config", required=True,
                        help="path to the JSON run configuration")
    parser.add_argument("--case", choices=sorted(_CASE_FLAGS),
                        help="override the configured solver case")
    parser.add_argument("--out", help="output directory (default from config)")
    parser.add_argument("--format",
                        help="comma separated subset of json,csv,svg")
    parser.add_argument("--tol-acc", type=float,
                        help="override the extraneous-root acceptance tolerance")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.case:
            requested = _CASE_FLAGS[args.case]
            if requested != "auto" and requested != config.case:
                raise ValidationError(
                    "case", f"--case {args.case} conflicts with the "
                            f"configured free lengths")
        if args.out:
            config = replace(config, output_dir=args.out)
        if args.format:
            formats = tuple(f.strip() for f in args.format.split(",") if f.strip())
            bad = set(formats) - {"json", "csv", "svg"}
            if bad or not formats:
                raise ValidationError("format", f"unsupported: {sorted(bad)}")
            config = replace(config, formats=formats)
        if args.tol_acc is not None:
            if not args.tol_acc > 0:
                raise ValidationError("tol-acc", "must be positive")
            config = replace(config, accept_tol=args.tol_acc)
    except (ParseError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        report = run_analysis(config)
    except MechanismError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3

    written = []
    table_formats = [f for f in config.formats if f in ("json", "csv")]
    if table_formats:
        written += emit_tables(report, config.output_dir, table_formats)
    if "svg" in config.formats:
        written += render_svg(report, config.output_dir)

    c = report.counts
    print(f"contact: {report.contact}")
    print(f"case: {report.case}")
    print(f"solutions: total={c['total']} accepted={c['accepted']} "
          f"rejected={c['rejected']} real={c['real']}")
    if report.margin and report.margin["ratio"] is not None:
        print(f"extraneous margin: accepted<={report.margin['max_accepted_residual']:.3e} "
              f"rejected>={report.margin['min_rejected_residual']:.3e} "
              f"ratio={report.margin['ratio']:.3e}")
    print(f"elapsed: {report.timing_s:.3f} s")
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
