"""Command-line entry point: run, validate and hist."""

import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from .handlers.hist_handler import HistHandler
from .handlers.run_handler import EXIT_INVALID, EXIT_OK, RunHandler
from .handlers.validate_handler import check_config, has_errors, validate_config
from .utils.config import load_config

# Load environment variables (ERGOLAB_THREADS, ${VAR} references in configs)
load_dotenv()


def setup_logging(log_level: str = "INFO") -> None:
    """
    Configure logging.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
    """
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[
            logging.StreamHandler(sys.stdout),
        ],
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ergolab", description="Quantum-ergodicity numerical lab")
    parser.add_argument("--log-level", default=None, help="Override settings.log_level")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run the sweep described by a config file")
    run.add_argument("config", help="Path to the YAML config")

    validate = sub.add_parser("validate", help="Report problems in a config file")
    validate.add_argument("config", help="Path to the YAML config")

    hist = sub.add_parser("hist", help="Histogram of eigenvalues against the Plancherel measure")
    hist.add_argument("eigenvalues", help="CSV file with an eigenvalue column")
    hist.add_argument("--q", type=int, required=True, help="Branching number q >= 2")
    hist.add_argument("--bins", type=int, default=40, help="Number of bins on [-2, 2]")
    hist.add_argument("--column", default="lambda", help="Eigenvalue column name")
    hist.add_argument("--exclude-trivial", action="store_true", help="Drop eigenvalues equal to (q+1)/sqrt(q)")
    hist.add_argument("--output", default=None, help="Write CSV here instead of stdout")
    return parser


def cmd_run(config_path: str, log_level: Optional[str]) -> int:
    logger = logging.getLogger(__name__)
    try:
        config = load_config(config_path)
    except (FileNotFoundError, ValueError) as e:
        setup_logging(log_level or "INFO")
        logger.error(str(e))
        return EXIT_INVALID

    setup_logging(log_level or config.settings.log_level)
    diagnostics = check_config(config)
    for d in diagnostics:
        (logger.error if d.level == "error" else logger.warning)(d.message)
    if has_errors(diagnostics):
        return EXIT_INVALID

    record = RunHandler(config).run()
    return record.exit_code


def cmd_validate(config_path: str, log_level: Optional[str]) -> int:
    setup_logging(log_level or "WARNING")
    diagnostics = validate_config(config_path)
    for d in diagnostics:
        print(d)
    return EXIT_INVALID if has_errors(diagnostics) else EXIT_OK


def cmd_hist(args: argparse.Namespace) -> int:
    setup_logging(args.log_level or "WARNING")
    logger = logging.getLogger(__name__)
    if args.q < 2:
        logger.error("q must be ≥ 2")
        return EXIT_INVALID
    try:
        text = HistHandler(args.q, args.bins, args.column, args.exclude_trivial).handle(
            args.eigenvalues, args.output
        )
    except (FileNotFoundError, ValueError) as e:
        logger.error(str(e))
        return EXIT_INVALID
    if args.output is None:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args.config, args.log_level)
    if args.command == "validate":
        return cmd_validate(args.config, args.log_level)
    return cmd_hist(args)


if __name__ == "__main__":
    sys.exit(main())
