"""
CLI module: argument parsing and the benchmark/evaluation reports behind
the subcommands.
"""

from .benchmark import (
    BenchmarkReport,
    ComparisonReport,
    compare_with_baselines,
    difficulty_grid,
    dimension_counts,
    format_mean_std,
    generalization_grid,
    results_frame,
    run_benchmark,
    summary_frame,
)
from .main import build_parser, main

__all__ = [
    "BenchmarkReport",
    "ComparisonReport",
    "compare_with_baselines",
    "difficulty_grid",
    "dimension_counts",
    "format_mean_std",
    "generalization_grid",
    "results_frame",
    "run_benchmark",
    "summary_frame",
    "build_parser",
    "main",
]
