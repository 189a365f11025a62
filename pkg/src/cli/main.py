"""Argument parsing and dispatch for the residua command line."""

import argparse
import logging
import sys
from typing import List, Optional

from config.logging_config import configure_logging
from src.poset_core.errors import ResiduaError
from .commands import (
    RunReport,
    cmd_classify,
    cmd_enumerate,
    cmd_generalized,
    cmd_residuate,
    cmd_tables,
)

logger = logging.getLogger(__name__)


def _names(value: str) -> List[str]:
    return [name.strip() for name in value.split(",") if name.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default from config)")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(
        prog="residua",
        description="Operator residuation checks on finite bounded posets with a unary operation",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    classify = commands.add_parser("classify", parents=[common], help="run every structural predicate")
    classify.add_argument("file", help="poset JSON file or bundled fixture name")
    classify.add_argument("--expect", type=_names, default=[], help="comma-separated predicates that must hold")

    residuate = commands.add_parser("residuate", parents=[common], help="verify operator residuation")
    residuate.add_argument("file")
    residuate.add_argument("--scheme", choices=["cone", "meet"], default="cone")

    generalized = commands.add_parser("generalized", parents=[common], help="subset-level adjointness")
    generalized.add_argument("file")
    generalized.add_argument("--direction", choices=["15", "16", "both"], default="both")
    generalized.add_argument("--method", choices=["direct", "reduction", "both"], default="both")
    generalized.add_argument("--triple-cap", type=int, default=None)
    generalized.add_argument("--pair-cap", type=int, default=None)
    generalized.add_argument("--no-prune", action="store_true", help="enumerate every subset")
    generalized.add_argument("--include-empty-c", action="store_true", help="let C range over the empty set")

    enumerate_ = commands.add_parser("enumerate", parents=[common], help="enumerate small structures")
    enumerate_.add_argument("--size", type=int, required=True)
    enumerate_.add_argument("--require", type=_names, default=[], help="comma-separated predicates")
    enumerate_.add_argument("--claim", default=None, help="implication 'antecedent=>consequent' to refute")
    enumerate_.add_argument("--fixtures", action="store_true", help="also search the bundled fixtures")
    enumerate_.add_argument("--min-size", type=int, default=1)
    enumerate_.add_argument("--census", action="store_true", help="predicate counts for sizes 1..size")
    enumerate_.add_argument("--export", default=None, metavar="DIR", help="write each structure as JSON")
    enumerate_.add_argument("--raw", action="store_true", help="labelled structures without dedupe")

    tables = commands.add_parser("tables", parents=[common], help="dump the M and R tables")
    tables.add_argument("file")
    tables.add_argument("--scheme", choices=["cone", "meet"], default="cone")
    return parser


def dispatch(args: argparse.Namespace) -> RunReport:
    if args.command == "classify":
        return cmd_classify(args.file, args.expect, args.threads)
    if args.command == "residuate":
        return cmd_residuate(args.file, args.scheme, args.threads)
    if args.command == "generalized":
        return cmd_generalized(
            args.file, args.direction, args.method, triple_cap=args.triple_cap, pair_cap=args.pair_cap,
            prune=not args.no_prune, include_empty_c=args.include_empty_c, threads=args.threads,
        )
    if args.command == "enumerate":
        return cmd_enumerate(
            args.size, args.require, claim=args.claim, with_census=args.census, export_dir=args.export,
            raw=args.raw, with_fixtures=args.fixtures, min_size=args.min_size, threads=args.threads,
        )
    return cmd_tables(args.file, args.scheme)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Returns:
        0 when every requested check passes, 1 when one fails, 2 on bad input
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        configure_logging(args.log_level)
        report = dispatch(args)
    except (ResiduaError, OSError, ValueError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 2

    print(report.to_json() if args.json else report.text)
    return report.exit_code
