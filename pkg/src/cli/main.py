"""
Command-line surface: gb, benchmark, stats, train and evaluate.

Exit codes: 0 on success, 1 for usage and validation errors, 2 for data
errors (unparsable files, mismatched models, failed runs).
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from ..core import (
    ConfigurationError,
    DistributionConstants,
    EnvConstants,
    ExitCodes,
    GroebnerConstants,
    GroebnerRLException,
    TrainerConfig,
    TrainingConstants,
    ValidationError,
    config_manager,
    get_logger,
    log_function_call,
    load_trainer_config,
    setup_logging,
)
from ..groebner import buchberger, reduce_basis
from ..learn import Trainer, best_checkpoint, interpretation_stats, load_model, trace_episodes
from ..utils import (
    read_ideal_file,
    read_jsonl,
    validate_distribution_string,
    validate_positive_int,
    validate_prime,
    validate_probability,
    validate_strategy_name,
    write_benchmark_csv,
    write_json,
)
from .benchmark import (
    compare_with_baselines,
    difficulty_grid,
    dimension_counts,
    format_mean_std,
    generalization_grid,
    run_benchmark,
)

logger = get_logger("cli")


class CLIParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ExitCodes.USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def _strategies(text: str) -> List[str]:
    try:
        return [validate_strategy_name(part) for part in text.split(",") if part.strip()]
    except ValidationError as e:
        raise argparse.ArgumentTypeError(e.message)


def build_parser() -> CLIParser:
    parser = CLIParser(prog="groebner-rl", description="Pair selection strategies for Buchberger's algorithm")
    parser.add_argument("--log-level", default=None, help="Logging level (default from environment)")
    parser.add_argument("--seed", type=int, default=None, help="Root seed for all randomness")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes")
    parser.add_argument("--prime", type=int, default=None, help="Field characteristic (default from environment)")
    parser.add_argument("--progress", action="store_true", help="Show progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    gb = sub.add_parser("gb", help="Compute a reduced Groebner basis")
    gb.add_argument("input", help="Ideal file: JSON {spec, seed, generators} or one polynomial per line")
    gb.add_argument("--strategy", default=GroebnerConstants.DEGREE)
    gb.add_argument("--elimination", choices=GroebnerConstants.ELIMINATION_MODES, default=GroebnerConstants.GEBAUER_MOELLER)
    gb.add_argument("--max-steps", type=int, default=None)
    gb.add_argument("--output", default=None, help="Also write {basis, stats} as JSON")

    bench = sub.add_parser("benchmark", help="Compare strategies on the same sampled ideals")
    bench.add_argument("--distribution", default=DistributionConstants.DEFAULT_SPEC)
    bench.add_argument("--strategies", type=_strategies, default=list(GroebnerConstants.BENCHMARK_STRATEGIES))
    bench.add_argument("--samples", type=int, default=1000)
    bench.add_argument("--csv", default=None, help="Per-sample CSV output")

    stats = sub.add_parser("stats", help="Dimension histogram and difficulty grid")
    stats.add_argument("--distribution", default=DistributionConstants.DEFAULT_SPEC)
    stats.add_argument("--samples", type=int, default=1000)
    stats.add_argument("--grid", action="store_true", help="Mean Degree additions over a (d, s) grid")
    stats.add_argument("--degrees", type=_int_list, default=[5, 10, 15, 20])
    stats.add_argument("--generators", type=_int_list, default=[2, 4, 6, 8, 10])
    stats.add_argument("--csv", default=None)

    train = sub.add_parser("train", help="Train a selection policy")
    train.add_argument("--config", default=None, help="TOML or JSON file with TrainerConfig fields")
    train.add_argument("--distribution", action="append", default=None, help="Training distribution (repeatable)")
    train.add_argument("--epochs", type=int, default=None)
    train.add_argument("--value-kind", choices=TrainingConstants.VALUE_KINDS, default=None)
    train.add_argument("--observation-mode", choices=EnvConstants.OBSERVATION_MODES, default=None)
    train.add_argument("--gamma", default=None, help="Discount factor in [0, 1]")
    train.add_argument("--lam", default=None, help="GAE lambda in [0, 1]")
    train.add_argument("--output-dir", default="runs/latest")
    train.add_argument("--resume", action="store_true")
    train.add_argument("--window", type=int, default=TrainingConstants.SMOOTHING_WINDOW,
                       help="Smoothing window for best-checkpoint selection")

    evaluate = sub.add_parser("evaluate", help="Evaluate a trained policy")
    evaluate.add_argument("model")
    evaluate.add_argument("--distribution", default=DistributionConstants.DEFAULT_SPEC)
    evaluate.add_argument("--episodes", type=int, default=1000)
    evaluate.add_argument("--greedy", action="store_true", help="Take the most probable row instead of sampling")
    evaluate.add_argument("--baselines", action="store_true", help="Also run the benchmark strategies")
    evaluate.add_argument("--ratios", default=None, help="CSV of per-ideal log10 agent/best-benchmark ratios")
    evaluate.add_argument("--grid", type=_int_list, default=None, help="Degrees d of a generalization grid")
    evaluate.add_argument("--grid-s", type=_int_list, default=None, help="Generator counts s of the grid")
    evaluate.add_argument("--interpret", action="store_true", help="Print pair-choice statistics")
    evaluate.add_argument("--trace", default=None, help="Write every policy step as JSON lines")
    evaluate.add_argument("--csv", default=None)
    return parser


@log_function_call(logger)
def cmd_gb(args) -> int:
    ideal = read_ideal_file(args.input, p=args.prime)
    strategy = validate_strategy_name(args.strategy)
    rng = np.random.Generator(np.random.PCG64(args.seed))
    G, stats = buchberger(ideal.generators, strategy, rng, args.max_steps, args.elimination)
    basis = G if stats.truncated else reduce_basis(G)
    for g in basis:
        print(g)
    print(stats.to_json())
    if args.output:
        write_json(args.output, {"basis": [str(g) for g in basis], "stats": stats.to_dict()})
    return ExitCodes.SUCCESS


@log_function_call(logger)
def cmd_benchmark(args) -> int:
    spec = validate_distribution_string(args.distribution, args.prime)
    samples = validate_positive_int(args.samples, "samples")
    reports, frame = run_benchmark(spec, args.strategies, samples, args.seed, args.workers, args.progress)
    print(f"{spec}, {samples} samples")
    for report in reports:
        print(f"  {report.strategy:<14} {format_mean_std(report.mean_additions, report.std_additions)}")
    if args.csv:
        write_benchmark_csv(args.csv, frame)
    return ExitCodes.SUCCESS


@log_function_call(logger)
def cmd_stats(args) -> int:
    spec = validate_distribution_string(args.distribution, args.prime)
    samples = validate_positive_int(args.samples, "samples")
    counts = dimension_counts(spec, samples, args.seed, args.workers)
    print(f"Dimension counts for {spec} ({samples} samples)")
    for dim, count in counts.items():
        label = "unit" if dim == GroebnerConstants.UNIT_IDEAL_DIMENSION else str(dim)
        print(f"  {label:>5}: {count}")
    if args.grid:
        grid = difficulty_grid(spec, args.degrees, args.generators, samples, args.seed,
                               args.workers, progress=args.progress)
        print(grid.to_string(float_format=lambda v: f"{v:.1f}"))
        if args.csv:
            Path(args.csv).parent.mkdir(parents=True, exist_ok=True)
            grid.to_csv(args.csv)
    elif args.csv:
        Path(args.csv).parent.mkdir(parents=True, exist_ok=True)
        counts.to_csv(args.csv)
    return ExitCodes.SUCCESS


def _trainer_config(args) -> TrainerConfig:
    overrides = {}
    if args.distribution:
        overrides["distributions"] = args.distribution
    for key in ("epochs", "value_kind", "observation_mode"):
        value = getattr(args, key)
        if value is not None:
            overrides[key] = value
    for key in ("gamma", "lam"):
        value = getattr(args, key)
        if value is not None:
            overrides[key] = validate_probability(value, key)
    for key in ("seed", "workers", "prime"):
        if key in args.explicit:
            overrides[key] = getattr(args, key)
    if args.config:
        return load_trainer_config(args.config, overrides)
    overrides.setdefault("prime", args.prime)
    return TrainerConfig.from_dict(overrides).validate()


@log_function_call(logger)
def cmd_train(args) -> int:
    config = _trainer_config(args)
    validate_prime(config.prime)
    for text in config.distributions:
        validate_distribution_string(text, config.prime)
    trainer = Trainer(config, args.output_dir, resume=args.resume)
    reports = trainer.train(progress=args.progress)
    for report in reports[-1:]:
        print(f"epoch {report.epoch}: {format_mean_std(report.mean_additions, report.std_additions)}")
    best = best_checkpoint(read_jsonl(trainer.log_path), args.window, config.checkpoint_every)
    if best is not None:
        print(f"best checkpoint: {trainer.checkpoint_path(best)}")
    print(f"model: {trainer.model_path}")
    return ExitCodes.SUCCESS


@log_function_call(logger)
def cmd_evaluate(args) -> int:
    spec = validate_distribution_string(args.distribution, args.prime)
    episodes = validate_positive_int(args.episodes, "episodes", allow_zero=True)
    params = load_model(args.model, n=spec.n)

    if args.grid or args.grid_s:
        degrees = args.grid or [spec.d]
        generators = args.grid_s or [spec.s]
        grid = generalization_grid(params, spec, degrees, generators, episodes, args.seed,
                                   args.greedy, args.workers, args.progress)
        print(grid.to_string(float_format=lambda v: f"{v:.3f}"))
        if args.csv:
            grid.to_csv(args.csv)
        return ExitCodes.SUCCESS

    strategies = list(GroebnerConstants.BENCHMARK_STRATEGIES) if (args.baselines or args.ratios) else []
    report = compare_with_baselines(params, spec, episodes, args.seed, strategies, args.greedy, args.workers)
    print(f"{spec}, {episodes} episodes")
    for row in [report.agent] + report.baselines:
        print(f"  {row.strategy:<14} {format_mean_std(row.mean_additions, row.std_additions)}")
    if report.improvement is not None:
        print(f"  improvement    {report.improvement:.1%}")
    if args.csv:
        report.to_frame().to_csv(args.csv, index=False)
    if args.ratios and report.log_ratios is not None:
        report.log_ratios.to_csv(args.ratios, index=False)

    if args.interpret:
        stats = interpretation_stats(params, spec, episodes, args.seed, args.greedy)
        print(json.dumps(stats.to_dict()))
    if args.trace:
        written = trace_episodes(params, spec, episodes, args.trace, args.seed, args.greedy)
        print(f"trace: {written} steps written to {args.trace}")
    return ExitCodes.SUCCESS


COMMANDS = {
    "gb": cmd_gb,
    "benchmark": cmd_benchmark,
    "stats": cmd_stats,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the subcommand and map errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else ExitCodes.USAGE

    app = config_manager.app
    setup_logging(args.log_level or app.log_level, app.log_dir, enable_file=app.log_to_file)
    logger.debug(f"Configuration: {config_manager.get_config_summary()}")
    args.explicit = {key for key in ("seed", "workers", "prime") if getattr(args, key) is not None}
    if args.prime is None:
        args.prime = app.prime
    if args.seed is None:
        args.seed = app.seed
    if args.workers is None:
        args.workers = app.workers
    try:
        validate_positive_int(args.workers, "workers")
        validate_prime(args.prime)
        return COMMANDS[args.command](args)
    except (ValidationError, ConfigurationError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return ExitCodes.USAGE
    except GroebnerRLException as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return ExitCodes.DATA_ERROR
    except OSError as e:
        logger.error(f"File error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ExitCodes.DATA_ERROR
