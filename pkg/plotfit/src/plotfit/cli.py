"""Command line front end: fit the benchmark curves and emit figures."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .figures import emit_figures
from .fitting import fit_error_curve, fit_time_curve


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotfit",
        description="Fit benchmark curves from a bench CSV and emit report figures.",
    )
    parser.add_argument("bench_csv", help="bench CSV produced by the approximation tool")
    parser.add_argument("out_dir", nargs="?", help="figure output directory")
    parser.add_argument("--fit-only", action="store_true",
                        help="print the fit parameters as JSON and skip figures")
    args = parser.parse_args(argv)
    try:
        if args.fit_only:
            summary = {
                "error_fit": asdict(fit_error_curve(args.bench_csv)),
                "time_fit": asdict(fit_time_curve(args.bench_csv)),
            }
            print(json.dumps(summary, indent=2))
            return 0
        if not args.out_dir:
            parser.error("out_dir is required unless --fit-only is given")
        for path in emit_figures(args.bench_csv, args.out_dir):
            print(path)
        return 0
    except ValueError as exc:
        print(f"plotfit: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"plotfit: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
