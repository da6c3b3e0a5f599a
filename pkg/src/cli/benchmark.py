"""
Benchmark, statistics and comparison reports shared by the subcommands.

Every strategy runs on the same seeded ideals and per-sample results are
merged in seed-index order, so the tables do not depend on worker count.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..core import GroebnerConstants, get_logger, log_performance
from ..groebner import get_strategy
from ..ideals import DistributionSpec
from ..learn import LearnedStrategy, PolicyParams, SampleResult, run_on_samples
from ..utils import benchmark_frame

logger = get_logger("benchmark")

PERCENTILES = (10, 25, 50, 75, 90)


@dataclass
class BenchmarkReport:
    spec: str
    strategy: str
    samples: int
    mean_additions: float
    std_additions: float
    percentiles: Dict[int, float] = field(default_factory=dict)
    additions: List[int] = field(default_factory=list)

    @classmethod
    def from_results(cls, spec: DistributionSpec, strategy: str, results: Sequence[SampleResult]) -> "BenchmarkReport":
        additions = [r.additions for r in results]
        values = np.array(additions, dtype=np.float64)
        if values.size:
            mean, std = float(values.mean()), float(values.std())
            percentiles = {q: float(np.percentile(values, q)) for q in PERCENTILES}
        else:
            mean, std, percentiles = 0.0, 0.0, {}
        return cls(str(spec), strategy, len(additions), mean, std, percentiles, additions)

    def to_row(self) -> dict:
        row = {
            "distribution": self.spec,
            "strategy": self.strategy,
            "samples": self.samples,
            "mean": self.mean_additions,
            "std": self.std_additions,
        }
        row.update({f"p{q}": self.percentiles.get(q) for q in PERCENTILES})
        return row


def format_mean_std(mean: float, std: float) -> str:
    return f"{mean:.1f} [{std:.1f}]"


def run_benchmark(
    spec: DistributionSpec,
    strategies: Sequence[str],
    samples: int,
    seed: int = 0,
    workers: int = 1,
    progress: bool = False,
):
    """
    Run every strategy on the same `samples` ideals.

    Returns:
        (list of BenchmarkReport, per-sample DataFrame in seed-index order)
    """
    reports = []
    results_by_strategy = {}
    with log_performance(logger, f"benchmark of {len(strategies)} strategies on {spec}"):
        for strategy in tqdm(strategies, desc="strategies", disable=not progress):
            name = get_strategy(strategy).name
            results = run_on_samples(strategy, spec, samples, seed, workers)
            results_by_strategy[name] = results
            reports.append(BenchmarkReport.from_results(spec, name, results))
    return reports, results_frame(results_by_strategy)


def results_frame(results_by_strategy: Dict[str, Sequence[SampleResult]]) -> pd.DataFrame:
    order = {name: k for k, name in enumerate(results_by_strategy)}
    rows = [
        {
            "seed_index": r.seed_index,
            "strategy": name,
            "additions": r.additions,
            "basis_size": r.basis_size,
            "deg_max": r.deg_max,
            "dimension": r.dimension,
        }
        for name, results in results_by_strategy.items()
        for r in results
    ]
    rows.sort(key=lambda row: (row["seed_index"], order[row["strategy"]]))
    return benchmark_frame(rows)


def summary_frame(reports: Sequence[BenchmarkReport]) -> pd.DataFrame:
    return pd.DataFrame([report.to_row() for report in reports])


def dimension_counts(spec: DistributionSpec, samples: int, seed: int = 0, workers: int = 1) -> pd.Series:
    """
    Histogram of ideal dimensions over the sampled ideals (Degree runs).

    The unit ideal appears under -1.
    """
    results = run_on_samples(GroebnerConstants.DEGREE, spec, samples, seed, workers)
    dims = pd.Series([r.dimension for r in results], dtype="Int64", name="dimension")
    counts = dims.value_counts().sort_index()
    counts.name = "count"
    return counts


def difficulty_grid(
    base: DistributionSpec,
    degrees: Sequence[int],
    generators: Sequence[int],
    samples: int,
    seed: int = 0,
    workers: int = 1,
    strategy: str = GroebnerConstants.DEGREE,
    progress: bool = False,
) -> pd.DataFrame:
    """
    Mean additions per (d, s) cell, rows indexed by d and columns by s.

    Every cell keeps n, flavor, prime and extra-term rate of `base`.
    """
    grid = pd.DataFrame(index=pd.Index(list(degrees), name="d"), columns=pd.Index(list(generators), name="s"), dtype=float)
    cells = [(d, s) for d in degrees for s in generators]
    for d, s in tqdm(cells, desc="grid", disable=not progress):
        spec = replace(base, d=d, s=s)
        results = run_on_samples(strategy, spec, samples, seed, workers)
        grid.loc[d, s] = float(np.mean([r.additions for r in results])) if results else 0.0
    return grid


@dataclass
class ComparisonReport:
    """Agent against benchmark strategies on identical ideals."""

    agent: BenchmarkReport
    baselines: List[BenchmarkReport]
    log_ratios: Optional[pd.DataFrame] = None

    @property
    def best_baseline(self) -> Optional[BenchmarkReport]:
        if not self.baselines:
            return None
        return min(self.baselines, key=lambda report: report.mean_additions)

    @property
    def improvement(self) -> Optional[float]:
        """1 - agent mean / best benchmark mean."""
        best = self.best_baseline
        if best is None or best.mean_additions == 0:
            return None
        return 1.0 - self.agent.mean_additions / best.mean_additions

    def to_frame(self) -> pd.DataFrame:
        frame = summary_frame([self.agent] + self.baselines)
        frame["improvement"] = None
        frame.loc[0, "improvement"] = self.improvement
        return frame


def compare_with_baselines(
    params: PolicyParams,
    spec: DistributionSpec,
    episodes: int,
    seed: int = 0,
    strategies: Sequence[str] = tuple(GroebnerConstants.BENCHMARK_STRATEGIES),
    greedy: bool = False,
    workers: int = 1,
) -> ComparisonReport:
    """
    Evaluate the policy and the given strategies on the same ideals.

    Per-ideal log10(agent / best benchmark) ratios are computed against the
    strategy with the best mean; ideals where either count is 0 get NaN.
    """
    agent_results = run_on_samples(LearnedStrategy(params, greedy), spec, episodes, seed, workers)
    agent = BenchmarkReport.from_results(spec, "learned", agent_results)
    baselines = [
        BenchmarkReport.from_results(spec, get_strategy(s).name, run_on_samples(s, spec, episodes, seed, workers))
        for s in strategies
    ]
    report = ComparisonReport(agent, baselines)
    best = report.best_baseline
    if best is not None:
        agent_counts = np.array(agent.additions, dtype=np.float64)
        best_counts = np.array(best.additions, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(
                (agent_counts > 0) & (best_counts > 0),
                np.log10(agent_counts / best_counts),
                np.nan,
            )
        report.log_ratios = pd.DataFrame(
            {
                "seed_index": np.arange(len(ratios)),
                "agent": agent.additions,
                best.strategy: best.additions,
                "log10_ratio": ratios,
            }
        )
    return report


def generalization_grid(
    params: PolicyParams,
    base: DistributionSpec,
    degrees: Sequence[int],
    generators: Sequence[int],
    episodes: int,
    seed: int = 0,
    greedy: bool = False,
    workers: int = 1,
    progress: bool = False,
) -> pd.DataFrame:
    """Agent mean / best benchmark mean on each n-d-s cell."""
    grid = pd.DataFrame(index=pd.Index(list(degrees), name="d"), columns=pd.Index(list(generators), name="s"), dtype=float)
    cells = [(d, s) for d in degrees for s in generators]
    for d, s in tqdm(cells, desc="grid", disable=not progress):
        spec = replace(base, d=d, s=s)
        report = compare_with_baselines(params, spec, episodes, seed, greedy=greedy, workers=workers)
        best = report.best_baseline
        grid.loc[d, s] = report.agent.mean_additions / best.mean_additions if best.mean_additions else np.nan
    return grid
