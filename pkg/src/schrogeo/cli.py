"""Command-line runner: ``schrogeo <suite> [options]``.

Exit codes: 0 all checks passed, 1 usage error, 2 invalid configuration,
3 at least one FAIL or ERROR record, 4 I/O failure (unreadable or malformed
config file, unwritable output).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .suites import SUITES, ConfigError, SuiteConfig, emit_report, run_suite

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_CHECKS = 3
EXIT_IO = 4

ENV_SEED = "SCHROGEO_SEED"


class _UsageError(Exception):
    pass


class _IOFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; the contract reserves 2 for
    # config validation, so usage problems are rerouted to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="schrogeo",
        description="Run verification suites for Schrödinger geometry.",
    )
    parser.add_argument(
        "suite",
        nargs="?",
        choices=SUITES,
        help="which suite to run (or provide it in --config)",
    )
    parser.add_argument(
        "--dim",
        action="append",
        type=int,
        metavar="N",
        help="spatial dimension, repeatable (default 1 2 3)",
    )
    parser.add_argument(
        "--lambda",
        dest="lam",
        action="append",
        type=float,
        metavar="F",
        help="quadric level, repeatable, must be negative for bulk suites",
    )
    parser.add_argument(
        "--mu",
        action="append",
        type=float,
        metavar="F",
        help="clock deformation strength, repeatable",
    )
    parser.add_argument("--samples", type=int, metavar="N", help="samples per check")
    parser.add_argument(
        "--seed", type=int, metavar="N", help=f"base seed (overrides ${ENV_SEED})"
    )
    parser.add_argument("--tol", type=float, metavar="F", help="main tolerance")
    parser.add_argument(
        "--fd-tol", dest="fd_tol", type=float, metavar="F", help="finite-difference tolerance"
    )
    parser.add_argument("--format", choices=("json", "text"), help="output format")
    parser.add_argument("--config", metavar="PATH", help="JSON config file")
    parser.add_argument("--out", metavar="PATH", help="write the report to a file")
    return parser


_FILE_KEYS = {
    "suite": str,
    "dim": (int, list),
    "lambda": (float, int, list),
    "mu": (float, int, list),
    "samples": int,
    "seed": int,
    "tol": (float, int),
    "fd_tol": (float, int),
    "fd-tol": (float, int),
    "format": str,
    "out": str,
}


def _load_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise _IOFailure(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _IOFailure(f"malformed config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise _IOFailure(f"malformed config file {path}: expected a JSON object")
    for key, value in data.items():
        allowed = _FILE_KEYS.get(key)
        if allowed is None:
            raise _IOFailure(f"malformed config file {path}: unknown key {key!r}")
        if isinstance(value, bool) or not isinstance(value, allowed):
            raise _IOFailure(
                f"malformed config file {path}: key {key!r} has the wrong type"
            )
    return data


def _as_tuple(value, cast) -> tuple:
    if isinstance(value, (list, tuple)):
        return tuple(cast(v) for v in value)
    return (cast(value),)


def _grid(flag_values, data: dict, key: str, cast, default: tuple) -> tuple:
    # precedence: flags, then config file, then the built-in default
    if flag_values:
        return tuple(flag_values)
    if key in data:
        return _as_tuple(data[key], cast)
    return default


def _build_config(args) -> SuiteConfig:
    data = _load_file(args.config) if args.config else {}
    if "fd-tol" in data:
        data.setdefault("fd_tol", data.pop("fd-tol"))

    suite = args.suite or data.get("suite")
    if suite is None:
        raise _UsageError("a suite name is required (argument or config file)")

    dims = _grid(args.dim, data, "dim", int, (1, 2, 3))
    lams = _grid(args.lam, data, "lambda", float, (-2.0, -1.0, -0.5, -0.3))
    mus = _grid(args.mu, data, "mu", float, (-1.0, 0.0, 1.0, 2.0))

    seed = args.seed
    if seed is None and ENV_SEED in os.environ:
        raw = os.environ[ENV_SEED]
        try:
            seed = int(raw)
        except ValueError as exc:
            raise ConfigError(f"${ENV_SEED} must be an integer, got {raw!r}") from exc
    if seed is None:
        seed = data.get("seed", 42)

    return SuiteConfig(
        suite=suite,
        dims=dims,
        lams=lams,
        mus=mus,
        samples=args.samples if args.samples is not None else data.get("samples", 20),
        seed=seed,
        tol=args.tol if args.tol is not None else data.get("tol", 1e-8),
        fd_tol=args.fd_tol if args.fd_tol is not None else data.get("fd_tol", 1e-5),
        fmt=args.format or data.get("format", "text"),
        out=args.out or data.get("out"),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _build_config(args)
        cfg.validate()
    except _UsageError as exc:
        print(f"schrogeo: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"schrogeo: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _IOFailure as exc:
        print(f"schrogeo: {exc}", file=sys.stderr)
        return EXIT_IO

    report = run_suite(cfg)
    payload = emit_report(report, cfg.fmt)
    # wall time goes to stderr only: the payload is byte-reproducible
    print(f"# wall time {report.wall_time:.2f}s", file=sys.stderr)

    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"schrogeo: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(payload)
    return EXIT_OK if report.all_passed() else EXIT_CHECKS


if __name__ == "__main__":
    sys.exit(main())
