"""Command-line front end.

One subcommand per experiment kind plus ``run`` (kind taken from a config
file) and ``summarize``.  Exit status: 0 when every bound check passed,
1 when a check failed, 2 for configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .errors import ConfigError
from .experiments import (
    KINDS,
    _KIND_FIELDS,
    RunRecord,
    load_config_file,
    records_from_file,
    run,
    summarize,
    write_csv,
    write_jsonl,
)

_FLAG_HELP = {
    "trials": "number of trials / inputs / candidates",
    "seed": "PRNG seed (unsigned integer)",
    "dim": "Hilbert-space dimension n",
    "num_inputs": "number of game inputs |X|",
    "restarts": "independent seesaw restarts",
    "iterations": "seesaw iteration cap",
    "theta": "Alice-side diagonal direction: 0, pi/2 or pythagorean",
    "x": "target eigenvalue of the position sum (exact rational)",
    "p": "target eigenvalue of the momentum difference (exact rational)",
    "epsilon": "ball radius (exact rational, e.g. 1/10)",
    "metric": "metric kind: standard, discrete or dyadic",
    "sites": "chain length(s)",
    "strategy": "path to a strategy JSON file",
    "support_max": "largest random support size",
    "gammas": "eigenphase samples per trial",
    "tolerance": "pass/fail tolerance for this kind's bound checks",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepwitness",
        description="separability experiments: Weyl CCR checks, eigenvector and "
        "EPR witnesses, and guessing-game bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for kind in KINDS:
        kind_parser = sub.add_parser(kind, help=f"run the {kind} experiment")
        _add_common_flags(kind_parser)
        for field, (coerce, default) in _KIND_FIELDS[kind].items():
            flag = "--" + field.replace("_", "-")
            kind_parser.add_argument(
                flag,
                dest=field,
                type=coerce,
                default=None,
                help=f"{_FLAG_HELP.get(field, field)} (default {default})",
            )

    run_parser = sub.add_parser("run", help="run an experiment described by a config file")
    _add_common_flags(run_parser, config_required=True)

    sum_parser = sub.add_parser("summarize", help="tabulate JSONL report files")
    sum_parser.add_argument("reports", nargs="*", help="paths to JSONL report files")

    return parser


def _add_common_flags(parser: argparse.ArgumentParser, config_required: bool = False) -> None:
    parser.add_argument(
        "--config",
        default=None,
        required=config_required,
        help="config file: INI with an [experiment] section, or a previous JSONL record",
    )
    parser.add_argument("--seed", type=int, default=None, help=_FLAG_HELP["seed"])
    parser.add_argument("--out", default=None, help="report output path")
    parser.add_argument(
        "--format",
        choices=("json-lines", "csv"),
        default="json-lines",
        help="report format for --out",
    )


def _gather_config(args: argparse.Namespace) -> dict:
    config: dict = {}
    if args.config:
        config.update(load_config_file(args.config))
    if args.command != "run":
        if "kind" in config and config["kind"] != args.command:
            raise ConfigError(
                f"config file is for kind {config['kind']!r} but subcommand is {args.command!r}"
            )
        config["kind"] = args.command
        for field in _KIND_FIELDS[args.command]:
            value = getattr(args, field, None)
            if value is not None:
                config[field] = value
    if args.seed is not None:
        config["seed"] = args.seed
    return config


def _emit(record: RunRecord, args: argparse.Namespace) -> None:
    if args.out:
        if args.format == "csv":
            write_csv(record, args.out)
        else:
            write_jsonl(record, args.out)
    verdict = "PASS" if record.passed else "FAIL"
    stats = {k: v for k, v in record.aggregate.items() if k != "pass"}
    brief = ", ".join(f"{k}={v}" for k, v in list(stats.items())[:4])
    print(f"[{verdict}] {record.kind} seed={record.config.get('seed')} {brief}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "summarize":
        records = []
        try:
            for path in args.reports:
                records.extend(records_from_file(path))
        except (ConfigError, OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        sys.stdout.write(summarize(records))
        return 0

    try:
        config = _gather_config(args)
        record = run(config)
        _emit(record, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    return 0 if record.passed else 1


if __name__ == "__main__":
    sys.exit(main())
