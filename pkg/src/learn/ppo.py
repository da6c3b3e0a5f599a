"""
Policy-gradient training of the pair-selection policy.

Each epoch samples episodes with the current policy, estimates advantages
with GAE against the configured value baseline, normalizes them over the
epoch and takes full-batch Adam steps on the clipped surrogate until the
sampled KL estimate reaches the limit.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
from tqdm import tqdm

from ..core import (
    InvalidArgumentError,
    NonFiniteLossError,
    TrainerConfig,
    TrainingConstants,
    get_logger,
    log_performance,
)
from ..env import BuchbergerEnv, encode_observation
from ..groebner import BuchbergerState, PairSelector, buchberger, get_strategy
from ..ideals import DistributionSpec, IdealGenerator, parse_specs
from ..utils import append_epoch_log, read_jsonl, write_jsonl
from .advantages import gae, normalize_advantages
from .policy import PARAM_NAMES, PolicyParams, PolicySample, adam_step, init_params, load_model, sample_action, save_model, surrogate
from .values import value_estimate

logger = get_logger("ppo")

# second word of the seed used for action sampling, so actions and ideals
# come from different PCG64 streams
_ACTION_STREAM = 1
_SPEC_STREAM = 2


def action_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64([seed, _ACTION_STREAM]))


# --- episodes --------------------------------------------------------------


@dataclass
class Trajectory:
    observations: List[np.ndarray] = field(default_factory=list)
    actions: List[int] = field(default_factory=list)
    log_probs: List[float] = field(default_factory=list)
    rewards: List[int] = field(default_factory=list)
    values: List[float] = field(default_factory=list)
    bootstrap: float = 0.0
    truncated: bool = False
    seed: int = 0

    def __len__(self):
        return len(self.actions)

    @property
    def additions(self) -> int:
        return -sum(self.rewards)

    def check(self):
        lengths = {len(self.observations), len(self.actions), len(self.log_probs), len(self.rewards), len(self.values)}
        if len(lengths) != 1:
            raise InvalidArgumentError(f"trajectory arrays have different lengths: {sorted(lengths)}")


def make_env(spec: DistributionSpec, seed: int, mode: str, max_steps: Optional[int]) -> BuchbergerEnv:
    return BuchbergerEnv(spec, seed=seed, mode=mode, max_steps=max_steps)


@dataclass(frozen=True)
class EpisodeJob:
    params: PolicyParams
    spec: DistributionSpec
    seed: int
    value_kind: str
    gamma: float
    max_episode_length: Optional[int]
    max_rollout_steps: int
    greedy: bool = False
    env_factory: Callable = make_env


def collect_episode(job: EpisodeJob) -> Trajectory:
    """Run one episode with the policy, recording what the update needs."""
    env = job.env_factory(job.spec, job.seed, job.params.observation_mode, job.max_episode_length)
    rng = action_rng(job.seed)
    trajectory = Trajectory(seed=job.seed)
    observation = env.reset()
    while not env.done:
        value = value_estimate(env.state, job.value_kind, job.gamma, job.max_rollout_steps)
        action, logp = sample_action(job.params, observation.matrix, rng, job.greedy)
        result = env.step(action)
        trajectory.observations.append(observation.matrix)
        trajectory.actions.append(action)
        trajectory.log_probs.append(logp)
        trajectory.rewards.append(result.reward)
        trajectory.values.append(value)
        observation = result.observation

    if env.truncated:
        trajectory.truncated = True
        trajectory.bootstrap = value_estimate(env.state, job.value_kind, job.gamma, job.max_rollout_steps)
    return trajectory


def _map(function: Callable, jobs: Sequence, workers: int) -> list:
    """Apply function to jobs, in order, optionally on a process pool."""
    if workers <= 1 or len(jobs) <= 1:
        return [function(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def sample_episodes(jobs: Sequence[EpisodeJob], workers: int = 1) -> List[Trajectory]:
    return _map(collect_episode, jobs, workers)


# --- training --------------------------------------------------------------


@dataclass
class EpochReport:
    epoch: int
    distribution: str
    mean_additions: float
    std_additions: float
    updates: int
    kl: float
    wall_seconds: float
    episodes: int = 0
    truncated_episodes: int = 0

    def to_log_record(self) -> dict:
        return {
            "epoch": self.epoch,
            "mean_additions": self.mean_additions,
            "std_additions": self.std_additions,
            "updates": self.updates,
            "kl": self.kl,
            "wall_seconds": self.wall_seconds,
        }


def epoch_spec(config: TrainerConfig, epoch: int) -> DistributionSpec:
    """Training distribution for an epoch, drawn uniformly from the configured list."""
    specs = parse_specs(config.distributions, config.prime)
    if len(specs) == 1:
        return specs[0]
    rng = np.random.Generator(np.random.PCG64([config.seed, epoch, _SPEC_STREAM]))
    return specs[int(rng.integers(len(specs)))]


def episode_seed(config: TrainerConfig, epoch: int, k: int) -> int:
    return config.seed + (epoch - 1) * config.episodes_per_epoch + k


def _check_finite(result, epoch: int):
    finite = np.isfinite(result.objective) and np.isfinite(result.kl)
    finite = finite and all(np.all(np.isfinite(result.grads[name])) for name in PARAM_NAMES)
    if not finite:
        details = {"epoch": epoch, "objective": float(result.objective), "kl": float(result.kl)}
        logger.error(f"Non-finite surrogate in epoch {epoch}: {details}")
        raise NonFiniteLossError(f"non-finite loss in epoch {epoch}", details=details)


def train_epoch(
    config: TrainerConfig,
    params: PolicyParams,
    epoch: int = 1,
    env_factory: Callable = make_env,
    workers: Optional[int] = None,
) -> EpochReport:
    """
    One epoch of sampling and clipped-surrogate updates; params change in place.

    Raises:
        NonFiniteLossError: If the objective or its gradient is not finite
    """
    spec = epoch_spec(config, epoch)
    workers = config.workers if workers is None else workers

    with log_performance(logger, f"epoch {epoch} on {spec}") as perf:
        jobs = [
            EpisodeJob(
                params=params,
                spec=spec,
                seed=episode_seed(config, epoch, k),
                value_kind=config.value_kind,
                gamma=config.gamma,
                max_episode_length=config.max_episode_length,
                max_rollout_steps=config.max_rollout_steps,
                env_factory=env_factory,
            )
            for k in range(config.episodes_per_epoch)
        ]
        trajectories = sample_episodes(jobs, workers)

        advantages = []
        for trajectory in trajectories:
            trajectory.check()
            adv, _ = gae(trajectory.rewards, trajectory.values, config.gamma, config.lam, trajectory.bootstrap)
            advantages.append(adv)
        flat = normalize_advantages(np.concatenate(advantages) if advantages else np.zeros(0))

        batch = []
        offset = 0
        for trajectory in trajectories:
            for t in range(len(trajectory)):
                batch.append(
                    PolicySample(
                        trajectory.observations[t],
                        trajectory.actions[t],
                        float(flat[offset + t]),
                        trajectory.log_probs[t],
                    )
                )
            offset += len(trajectory)

        updates = 0
        kl = 0.0
        for _ in range(config.max_updates_per_epoch):
            result = surrogate(params, batch, config.clip_epsilon)
            _check_finite(result, epoch)
            kl = float(result.kl)
            if kl >= config.kl_limit:
                logger.debug(f"Early stop after {updates} updates, kl={kl:.5f}")
                break
            adam_step(params, result.grads, config.learning_rate)
            updates += 1

    additions = np.array([t.additions for t in trajectories], dtype=np.float64)
    report = EpochReport(
        epoch=epoch,
        distribution=str(spec),
        mean_additions=float(additions.mean()) if additions.size else 0.0,
        std_additions=float(additions.std()) if additions.size else 0.0,
        updates=updates,
        kl=kl,
        wall_seconds=perf.elapsed,
        episodes=len(trajectories),
        truncated_episodes=sum(t.truncated for t in trajectories),
    )
    logger.info(
        f"Epoch {epoch}: mean additions {report.mean_additions:.1f} "
        f"[{report.std_additions:.1f}], {updates} updates, kl {kl:.4f}"
    )
    return report


def best_checkpoint(
    epoch_log: Sequence[dict],
    window: int = TrainingConstants.SMOOTHING_WINDOW,
    checkpoint_every: int = TrainingConstants.CHECKPOINT_EVERY,
) -> Optional[int]:
    """
    Checkpoint epoch with the lowest trailing moving average of mean additions.

    Returns:
        The epoch number, or None when no checkpoint epoch is logged
    """
    if window < 1:
        raise InvalidArgumentError("smoothing window must be positive")
    means = [record["mean_additions"] for record in epoch_log]
    best_epoch, best_value = None, None
    for k, record in enumerate(epoch_log):
        if record["epoch"] % checkpoint_every != 0:
            continue
        recent = means[max(0, k - window + 1): k + 1]
        smoothed = sum(recent) / len(recent)
        if best_value is None or smoothed < best_value:
            best_epoch, best_value = record["epoch"], smoothed
    return best_epoch


class Trainer:
    """
    Runs epochs, appends the JSON-lines epoch log and saves checkpoints.

    Files under output_dir: model.json, epochs.jsonl and
    checkpoints/model_epoch{N}.json.
    """

    def __init__(
        self,
        config: TrainerConfig,
        output_dir: Union[str, Path],
        n: Optional[int] = None,
        resume: bool = False,
    ):
        self.config = config.validate()
        self.output_dir = Path(output_dir)
        self.model_path = self.output_dir / "model.json"
        self.log_path = self.output_dir / "epochs.jsonl"
        self.checkpoint_dir = self.output_dir / "checkpoints"
        self.start_epoch = 1

        specs = parse_specs(config.distributions, config.prime)
        n_values = {spec.n for spec in specs}
        if len(n_values) != 1:
            raise InvalidArgumentError(f"training distributions mix variable counts {sorted(n_values)}")
        self.n = n if n is not None else n_values.pop()

        if resume and self.model_path.exists():
            self.params = load_model(self.model_path, self.n, config.observation_mode)
            if self.log_path.exists():
                records = read_jsonl(self.log_path)
                if records:
                    self.start_epoch = records[-1]["epoch"] + 1
            logger.info(f"Resuming training at epoch {self.start_epoch}")
        else:
            rng = np.random.Generator(np.random.PCG64(config.seed))
            self.params = init_params(self.n, config.observation_mode, config.hidden_size, rng)
            self.output_dir.mkdir(parents=True, exist_ok=True)
            self.log_path.write_text("", encoding="utf-8")

    def checkpoint_path(self, epoch: int) -> Path:
        return self.checkpoint_dir / f"model_epoch{epoch}.json"

    def train(self, progress: bool = False) -> List[EpochReport]:
        reports = []
        save_model(self.params, self.model_path, {"epoch": self.start_epoch - 1})
        epochs = range(self.start_epoch, self.config.epochs + 1)
        for epoch in tqdm(epochs, desc="epochs", disable=not progress):
            report = train_epoch(self.config, self.params, epoch)
            append_epoch_log(self.log_path, report.to_log_record())
            reports.append(report)
            if epoch % self.config.checkpoint_every == 0:
                save_model(self.params, self.checkpoint_path(epoch), {"epoch": epoch})
            save_model(self.params, self.model_path, {"epoch": epoch})
        return reports


# --- evaluation ------------------------------------------------------------


class LearnedStrategy(PairSelector):
    """Select pairs by sampling (or maximizing) the policy's row probabilities."""

    name = "learned"

    def __init__(self, params: PolicyParams, greedy: bool = False):
        self.params = params
        self.greedy = greedy
        self.needs_rng = not greedy

    def choose(self, state: BuchbergerState, rng=None) -> int:
        observation = encode_observation(state, self.params.observation_mode)
        action, _ = sample_action(self.params, observation.matrix, rng, self.greedy)
        return action


@dataclass(frozen=True)
class SampleResult:
    seed_index: int
    strategy: str
    additions: int
    basis_size: int
    deg_max: int
    dimension: Optional[int]
    truncated: bool = False


@dataclass(frozen=True)
class SampleJob:
    strategy: Union[str, PairSelector]
    spec: DistributionSpec
    seed: int
    index: int
    max_steps: Optional[int] = None


def run_sample(job: SampleJob) -> SampleResult:
    """Run one strategy on ideal number `index` of the seeded stream."""
    sample = IdealGenerator(job.spec, job.seed).sample(job.index)
    selector = get_strategy(job.strategy)
    _, stats = buchberger(sample.generators, selector, action_rng(sample.seed), job.max_steps)
    return SampleResult(
        seed_index=job.index,
        strategy=selector.name,
        additions=stats.additions,
        basis_size=stats.basis_size,
        deg_max=stats.deg_max,
        dimension=stats.dimension,
        truncated=stats.truncated,
    )


def run_on_samples(
    strategy: Union[str, PairSelector],
    spec: DistributionSpec,
    count: int,
    seed: int = 0,
    workers: int = 1,
    max_steps: Optional[int] = None,
) -> List[SampleResult]:
    """Run a strategy on the first `count` ideals of the stream, in index order."""
    jobs = [SampleJob(strategy, spec, seed, k, max_steps) for k in range(count)]
    return _map(run_sample, jobs, workers)


@dataclass
class EvaluationReport:
    spec: str
    episodes: int
    mean_additions: float
    std_additions: float
    additions: List[int]
    greedy: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def evaluate(
    params: PolicyParams,
    spec: Union[DistributionSpec, str],
    episodes: int,
    seed: int = 0,
    greedy: bool = False,
    workers: int = 1,
) -> EvaluationReport:
    """Mean and std of additions of the policy over fresh ideals."""
    if isinstance(spec, str):
        spec = DistributionSpec.parse(spec)
    results = run_on_samples(LearnedStrategy(params, greedy), spec, episodes, seed, workers)
    additions = [r.additions for r in results]
    values = np.array(additions, dtype=np.float64)
    return EvaluationReport(
        spec=str(spec),
        episodes=episodes,
        mean_additions=float(values.mean()) if additions else 0.0,
        std_additions=float(values.std()) if additions else 0.0,
        additions=additions,
        greedy=greedy,
    )


@dataclass
class InterpretationStats:
    steps: int = 0
    degree_choices: int = 0
    monomial_opportunities: int = 0
    monomial_choices: int = 0
    true_degree_choices: int = 0

    @property
    def degree_fraction(self) -> float:
        return self.degree_choices / self.steps if self.steps else 0.0

    @property
    def monomial_fraction(self) -> float:
        return self.monomial_choices / self.monomial_opportunities if self.monomial_opportunities else 0.0

    @property
    def true_degree_fraction(self) -> float:
        return self.true_degree_choices / self.steps if self.steps else 0.0

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "degree_fraction": self.degree_fraction,
            "monomial_fraction": self.monomial_fraction,
            "true_degree_fraction": self.true_degree_fraction,
        }


def interpretation_stats(
    params: PolicyParams,
    spec: Union[DistributionSpec, str],
    episodes: int,
    seed: int = 0,
    greedy: bool = False,
) -> InterpretationStats:
    """
    How often the policy picks a pair that Degree could pick, a monomial
    S-polynomial when one is available, and an S-polynomial of minimal
    degree.
    """
    if isinstance(spec, str):
        spec = DistributionSpec.parse(spec)
    selector = LearnedStrategy(params, greedy)
    stats = InterpretationStats()
    generator = IdealGenerator(spec, seed)
    for k in range(episodes):
        sample = generator.sample(k)
        rng = action_rng(sample.seed)
        state = BuchbergerState.from_generators(list(sample.generators))
        while state.P:
            index = selector.choose(state, rng)
            chosen = state.P[index]
            s_degrees = [state.s_polynomial(pair).degree for pair in state.P]
            monomial = [len(state.s_polynomial(pair)) == 1 for pair in state.P]

            stats.steps += 1
            stats.degree_choices += chosen.degree == min(pair.degree for pair in state.P)
            stats.true_degree_choices += s_degrees[index] == min(s_degrees)
            if any(monomial):
                stats.monomial_opportunities += 1
                stats.monomial_choices += monomial[index]
            state.process(index)
    return stats



def trace_episodes(
    params: PolicyParams,
    spec: Union[DistributionSpec, str],
    episodes: int,
    path: Union[str, Path],
    seed: int = 0,
    greedy: bool = False,
) -> int:
    """
    Replay the policy on the first `episodes` ideals of the stream and write
    every step as a JSON-lines record tagged with its episode index.

    Actions use the same per-ideal streams as `evaluate`, so the rewards of
    episode k sum to minus its evaluated additions.

    Returns:
        Number of step records written
    """
    if isinstance(spec, str):
        spec = DistributionSpec.parse(spec)
    selector = LearnedStrategy(params, greedy)
    generator = IdealGenerator(spec, seed)
    env = BuchbergerEnv(mode=params.observation_mode, max_steps=None)
    write_jsonl(path, [])
    written = 0
    for k in range(episodes):
        sample = generator.sample(k)
        rng = action_rng(sample.seed)
        env.reset(sample)
        while not env.done:
            env.step(selector.choose(env.state, rng))
        written += env.write_trace(path, append=True, episode=k)
    logger.info(f"Wrote {written} trace records for {episodes} episodes to {path}")
    return written
