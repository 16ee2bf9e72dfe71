"""
Command-Line Entry Point
========================

``gaq-reroute`` subcommands:

    train     warm-up + training, writes a checkpoint
    test      greedy evaluation of a checkpoint over the ratio/total grid
    baseline  density-only routing over the same grid
    random    random road indexes over the same grid
    compare   per-cell deltas between summary.csv files
    grid      write a generated grid network with a column-band partition

Every expected failure (bad input file, checkpoint mismatch, mismatched
reports) is a RerouteError and ends with exit code 2 and one diagnostic line
on stderr.
"""

import argparse
import csv
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from pydantic import ValidationError

from backend.core.config import settings
from backend.core.exceptions import ConfigValidationError, RerouteError
from backend.core.logging import configure_logging
from backend.schemas.experiment import ExperimentConfig, PriorityMode
from backend.services.network.grid import generate_grid, grid_partition
from backend.services.network.loader import serialize_network
from evaluation.comparison import COMPARISON_COLUMNS, compare
from evaluation.reports import read_summary, write_comparison
from evaluation.runners import load_experiment, run_baseline, run_random, run_test, run_training

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2


# === Configuration overrides ===


def apply_overrides(config: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    """
    Fold CLI flags into the experiment and validate the result.

    --ratio/--total set the training fleet for ``train`` and collapse the
    test grid to that single cell for the evaluation subcommands.
    The subcommand always wins over the file's ``mode``.
    """
    update: Dict[str, Any] = {}
    if config.mode.value != args.command:
        logger.warning(f"Experiment mode overridden file_mode={config.mode.value} command={args.command}")
        update["mode"] = args.command
    if args.seed is not None:
        update["seed"] = args.seed
    if args.priority is not None:
        update["priority"] = args.priority
    if args.out is not None:
        update["output_dir"] = args.out
    if args.ratio is not None:
        update["rerouting_ratio"] = args.ratio
        if args.command != "train":
            update["test_ratios"] = [args.ratio]
    if args.total is not None:
        update["total_vehicles"] = args.total
        if args.command != "train":
            update["test_totals"] = [args.total]
    if not update:
        return config

    data = config.model_dump(mode="json")
    data.update(update)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ConfigValidationError(f"command-line override: {first['msg']}", field=location) from e


def output_dir(config: ExperimentConfig, command: str) -> Path:
    if config.output_dir:
        return Path(config.output_dir)
    return Path(settings.output_root) / command


def _experiment(args: argparse.Namespace) -> ExperimentConfig:
    return apply_overrides(load_experiment(args.config), args)


# === Subcommands ===


def cmd_train(args: argparse.Namespace) -> int:
    config = _experiment(args)
    outcome = run_training(config, output_dir(config, "train"))
    print(f"checkpoint: {outcome.checkpoint}")
    return EXIT_OK


def cmd_test(args: argparse.Namespace) -> int:
    config = _experiment(args)
    run_test(config, args.checkpoint, output_dir(config, "test"))
    return EXIT_OK


def cmd_baseline(args: argparse.Namespace) -> int:
    config = _experiment(args)
    run_baseline(config, output_dir(config, "baseline"))
    return EXIT_OK


def cmd_random(args: argparse.Namespace) -> int:
    config = _experiment(args)
    run_random(config, output_dir(config, "random"))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    reports = [read_summary(Path(path)) for path in args.summaries]
    table = compare(reports)
    if args.out:
        path = write_comparison(Path(args.out) / "comparison.csv", table)
        print(f"comparison: {path}")
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=list(COMPARISON_COLUMNS), lineterminator="\n")
        writer.writeheader()
        for row in table:
            writer.writerow(asdict(row))
    return EXIT_OK


def cmd_grid(args: argparse.Namespace) -> int:
    try:
        network = generate_grid(
            args.rows,
            args.cols,
            road_length=args.length,
            lanes=args.lanes,
            speed_limit=args.speed,
        )
    except ValueError as e:
        raise ConfigValidationError(str(e), field="rows/cols") from e
    partition = grid_partition(network, args.cols, args.regions)
    text = serialize_network(network, partition)
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
        print(f"network: {path}")
    else:
        print(text)
    return EXIT_OK


# === Parser ===


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="experiment JSON file")
    parser.add_argument("--seed", type=int, default=None, help="override the run seed")
    parser.add_argument("--out", default=None, help="run directory")
    parser.add_argument(
        "--priority",
        choices=[mode.value for mode in PriorityMode],
        default=None,
        help="near favours RVs close to their destination, far the opposite",
    )
    parser.add_argument("--ratio", type=float, default=None, help="rerouting ratio in (0, 1)")
    parser.add_argument("--total", type=int, default=None, help="total vehicles per episode")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaq-reroute",
        description="Fog-region graph-attention Q-learning with entropy-balanced rerouting",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="warm-up and train, then write a checkpoint")
    _add_run_flags(train)
    train.set_defaults(func=cmd_train)

    test = sub.add_parser("test", help="evaluate a checkpoint over the test grid")
    _add_run_flags(test)
    test.add_argument("--checkpoint", required=True, help="checkpoint.npz from a training run")
    test.set_defaults(func=cmd_test)

    baseline = sub.add_parser("baseline", help="density-only routing over the test grid")
    _add_run_flags(baseline)
    baseline.set_defaults(func=cmd_baseline)

    random_policy = sub.add_parser("random", help="random road indexes over the test grid")
    _add_run_flags(random_policy)
    random_policy.set_defaults(func=cmd_random)

    comparison = sub.add_parser("compare", help="compare summary.csv files against the first")
    comparison.add_argument("summaries", nargs="+", help="summary.csv paths, reference first")
    comparison.add_argument("--out", default=None, help="directory for comparison.csv")
    comparison.set_defaults(func=cmd_compare)

    grid = sub.add_parser("grid", help="write a grid network with column-band fog regions")
    grid.add_argument("--rows", type=int, default=4)
    grid.add_argument("--cols", type=int, default=4)
    grid.add_argument("--regions", type=int, default=2)
    grid.add_argument("--length", type=float, default=100.0, help="road length in metres")
    grid.add_argument("--lanes", type=int, default=1)
    grid.add_argument("--speed", type=float, default=15.0, help="speed limit in m/s")
    grid.add_argument("--out", default=None, help="network file to write (stdout if omitted)")
    grid.set_defaults(func=cmd_grid)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging(settings.log_level, settings.log_format)
    args = build_parser().parse_args(argv)
    logger.debug(f"Command started command={args.command}")
    try:
        return args.func(args)
    except RerouteError as e:
        print(f"error [{e.error_code}]: {e.message}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"error [IO_ERROR]: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
