"""
Buchberger's algorithm as an episodic environment.

Observations are integer matrices with one row per remaining pair, built
from the exponent vectors of the two leading terms of each generator in the
pair. Actions are row indices and the reward is minus the polynomial
additions spent processing the chosen pair.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra import Polynomial
from ..core import (
    EnvConstants,
    GroebnerConstants,
    InvalidActionError,
    InvalidArgumentError,
    InvalidStateError,
    get_logger,
)
from ..groebner import BuchbergerState, RunStats, SPair, stats_for
from ..ideals import DistributionSpec, IdealGenerator, IdealSample
from ..utils import write_jsonl

logger = get_logger("env")


@dataclass(frozen=True)
class Observation:
    matrix: np.ndarray
    # row -> pair identity
    pairs: Tuple[SPair, ...]

    @property
    def num_actions(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class StepResult:
    observation: Observation
    reward: int
    done: bool
    truncated: bool = False
    info: dict = field(default_factory=dict)


def observation_width(n: int, mode: str) -> int:
    if mode == EnvConstants.FULL:
        return 4 * n
    if mode == EnvConstants.LEAD_ONLY:
        return 2 * n
    raise InvalidArgumentError(f"unknown observation mode {mode!r}")


def _generator_block(g: Polynomial, mode: str) -> List[int]:
    n = g.n
    lead = list(g.terms[0].monomial)
    if mode == EnvConstants.LEAD_ONLY:
        return lead
    # a monomial generator has no second term; pad with zeros
    second = list(g.terms[1].monomial) if len(g.terms) > 1 else [0] * n
    return lead + second


def encode_observation(state: BuchbergerState, mode: str = EnvConstants.FULL) -> Observation:
    """Pair-exponent matrix of the state, rows in pair insertion order."""
    width = observation_width(state.n, mode)
    blocks = [_generator_block(g, mode) for g in state.G]
    if state.P:
        matrix = np.array([blocks[pair.i] + blocks[pair.j] for pair in state.P], dtype=np.int64)
    else:
        matrix = np.zeros((0, width), dtype=np.int64)
    return Observation(matrix, tuple(state.P))


class BuchbergerEnv:
    """
    Environment over Buchberger states.

    In sampler mode the k-th `reset()` draws ideal k of the seeded stream
    (seed `seed + k`); an ideal without pairs is redrawn from the stream
    reserved for redraws of that same seed.
    Passing an ideal to `reset` runs on it instead.
    """

    def __init__(
        self,
        spec: Union[DistributionSpec, str, None] = None,
        seed: int = 0,
        mode: str = EnvConstants.FULL,
        max_steps: Optional[int] = GroebnerConstants.DEFAULT_STEP_CAP,
        elimination: str = GroebnerConstants.GEBAUER_MOELLER,
    ):
        if isinstance(spec, str):
            spec = DistributionSpec.parse(spec)
        observation_width(1, mode)
        self.spec = spec
        self.mode = mode
        self.max_steps = max_steps
        self.elimination = elimination
        self.sampler = IdealGenerator(spec, seed) if spec is not None else None
        self.draws = 0
        self.ideal: Optional[IdealSample] = None
        self.state: Optional[BuchbergerState] = None
        self.steps = 0
        self.done = True
        self.truncated = False
        self.trace: List[dict] = []

    def _start(self, generators: Sequence[Polynomial]):
        self.state = BuchbergerState.from_generators(list(generators), self.elimination)
        self.steps = 0
        self.truncated = False
        self.trace = []
        self.done = self.state.done

    def reset(self, ideal: Union[IdealSample, Sequence[Polynomial], None] = None) -> Observation:
        if ideal is not None:
            generators = ideal.generators if isinstance(ideal, IdealSample) else list(ideal)
            if not generators:
                raise InvalidArgumentError("cannot reset on an empty ideal")
            self.ideal = ideal if isinstance(ideal, IdealSample) else None
            self._start(generators)
            return self.observation()

        if self.sampler is None:
            raise InvalidStateError("environment has no distribution; pass an ideal to reset")
        index = self.draws
        self.draws += 1
        for attempt in range(EnvConstants.MAX_RESAMPLE_ATTEMPTS):
            sample = self.sampler.sample(index, attempt)
            self._start(sample.generators)
            if not self.done:
                self.ideal = sample
                return self.observation()
            logger.warning(f"Ideal with seed {sample.seed} (attempt {attempt}) has no pairs; resampling")
        raise InvalidStateError(
            f"no ideal with pairs after {EnvConstants.MAX_RESAMPLE_ATTEMPTS} draws from {self.spec}"
        )

    def observation(self) -> Observation:
        if self.state is None:
            raise InvalidStateError("environment has not been reset")
        return encode_observation(self.state, self.mode)

    def step(self, action: int) -> StepResult:
        if self.state is None:
            raise InvalidStateError("environment has not been reset")
        if self.done:
            raise InvalidStateError("episode is done; call reset")
        num_actions = len(self.state.P)
        if not isinstance(action, (int, np.integer)) or not 0 <= action < num_actions:
            raise InvalidActionError(action, num_actions)

        outcome = self.state.process(int(action))
        self.steps += 1
        self.done = self.state.done
        if not self.done and self.max_steps is not None and self.steps >= self.max_steps:
            self.done = True
            self.truncated = True
            logger.warning(f"Episode truncated after {self.steps} steps")

        record = {
            "pair": [outcome.pair.i, outcome.pair.j],
            "reward": outcome.reward,
            "p_before": outcome.p_before,
            "basis_size": len(self.state.G),
        }
        self.trace.append(record)
        info = dict(
            record,
            additions=outcome.additions,
            zero_reduction=outcome.remainder.is_zero,
        )
        return StepResult(self.observation(), outcome.reward, self.done, self.truncated, info)

    def clone_state(self) -> BuchbergerState:
        if self.state is None:
            raise InvalidStateError("environment has not been reset")
        return self.state.copy()

    def run_stats(self) -> RunStats:
        if self.state is None:
            raise InvalidStateError("environment has not been reset")
        return stats_for(self.state, self.truncated)[1]

    def write_trace(self, path, append: bool = False, **extra) -> int:
        """
        Write the current episode's step records as JSON lines.

        Args:
            path: Output file
            append: Append to an existing trace instead of overwriting it
            **extra: Fields added to every record, e.g. an episode index

        Returns:
            Number of records written
        """
        write_jsonl(path, [dict(record, **extra) for record in self.trace], append=append)
        return len(self.trace)
