"""Command-line entry point for running experiment scenarios.

Subcommands: ``run`` executes a scenario config, ``figure`` reproduces a
bundled figure scenario by identifier, ``sweep`` runs a config across
override values. The output root comes from ``--out``, falling back to the
AVLOC_OUT environment variable, then the current directory. Exit codes:
0 success, 2 configuration error, 3 numeric error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import SimulationError
from .scenarios import ConfigError, FIGURES, reproduce_figure, run_scenario, sweep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avloc",
        description="Run audiovisual localization model scenarios")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario config file")
    p_run.add_argument("config", help="path to a scenario .ini file")
    p_run.add_argument("--out", help="output root directory")

    p_fig = sub.add_parser("figure", help="reproduce a bundled figure scenario")
    p_fig.add_argument("figure_id", metavar="FIG",
                       help=f"one of: {', '.join(sorted(FIGURES))}")
    p_fig.add_argument("--out", help="output root directory")

    p_sweep = sub.add_parser("sweep", help="run a config across parameter overrides")
    p_sweep.add_argument("config", help="path to a scenario .ini file")
    p_sweep.add_argument("overrides", nargs="*",
                         help="section.key=v1,v2,... (cartesian product)")
    p_sweep.add_argument("--out", help="output root directory")

    return parser


def _out_root(args) -> str:
    return args.out or os.environ.get("AVLOC_OUT") or "."


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            summary = run_scenario(args.config, _out_root(args))
            print(f"{summary['scenario']}: ok")
        elif args.command == "figure":
            for summary in reproduce_figure(args.figure_id, _out_root(args)):
                print(f"{summary['scenario']}: ok")
        elif args.command == "sweep":
            summaries = sweep(args.config, args.overrides, _out_root(args))
            print(f"{len(summaries)} sweep points: ok")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
