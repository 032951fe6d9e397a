#!/usr/bin/env python3
"""Run the full verification battery and archive the JSON report.

Convenience wrapper around the library runner for experiment logs: writes
reports/<suite>-seed<seed>.json and prints the text summary to the terminal.
"""

import argparse
import pathlib
import sys

from schrogeo.suites import SuiteConfig, emit_report, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("suite", nargs="?", default="all")
    ap.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--outdir", type=pathlib.Path, default=pathlib.Path("reports"))
    args = ap.parse_args()

    cfg = SuiteConfig(
        suite=args.suite, dims=tuple(args.dims), samples=args.samples, seed=args.seed
    )
    report = run_suite(cfg)
    print(emit_report(report, "text"))

    args.outdir.mkdir(parents=True, exist_ok=True)
    target = args.outdir / f"{args.suite}-seed{args.seed}.json"
    target.write_text(emit_report(report, "json"))
    print(f"wrote {target} ({report.wall_time:.2f}s)", file=sys.stderr)
    return 0 if report.all_passed() else 1


if __name__ == "__main__":
    raise SystemExit(main())
