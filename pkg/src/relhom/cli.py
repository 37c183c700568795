"""Command-line entry point: ``relhom sweep`` and ``relhom estimates``.

Exit codes: 0 success, 2 invalid scenario, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .scenario import ConfigError, load_config, run_estimates, run_scenario, write_csv

OUTPUT_DIR_ENV = "RELHOM_OUTPUT_DIR"
EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 2, 3

log = logging.getLogger("relhom")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relhom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep", "sweep one parameter and write delays and dip data as CSV"),
        ("estimates", "write the delay-per-area table for every effect"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="scenario INI file")
        p.add_argument("--out", help="output CSV (overrides [output] path)")
        p.add_argument("--seed", type=int, help="overrides [output] seed")
        p.add_argument("--threads", type=int, default=1, help="worker threads for sweep points")
        p.add_argument(
            "--latitude",
            action="store_true",
            help="read colatitude_deg and colatitude sweeps as geographic latitude",
        )
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def resolve_output(path: str) -> Path:
    out = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not out.is_absolute():
        out = Path(base) / out
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    try:
        cfg = load_config(args.config, latitude=args.latitude)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.out is not None:
            cfg.output_path = args.out
        if args.threads < 1:
            raise ConfigError(["--threads: must be >= 1"])
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.command == "sweep":
        result = run_scenario(cfg, threads=args.threads)
    else:
        result = run_estimates(cfg)

    try:
        path = write_csv(result, resolve_output(cfg.output_path))
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    log.info("wrote %d rows to %s", len(result.rows), path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
