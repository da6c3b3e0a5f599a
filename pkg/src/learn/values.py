"""
State value estimates used as the baseline for advantage estimation.
"""

from ..core import GroebnerConstants, InvalidArgumentError, RolloutLimitError, TrainingConstants, get_logger
from ..groebner import BuchbergerState, DegreeSelector

logger = get_logger("values")

_DEGREE = DegreeSelector()


def degree_rollout_value(
    state: BuchbergerState,
    gamma: float,
    max_steps: int = TrainingConstants.MAX_ROLLOUT_STEPS,
) -> float:
    """
    Discounted return of finishing the run from state with Degree selection.

    Works on a copy, so the caller's state is untouched.

    Raises:
        RolloutLimitError: If the rollout needs more than max_steps pairs
    """
    rollout = state.copy()
    value = 0.0
    discount = 1.0
    steps = 0
    while rollout.P:
        if steps >= max_steps:
            logger.error(f"Degree rollout exceeded {max_steps} steps")
            raise RolloutLimitError(max_steps)
        outcome = rollout.process(_DEGREE.choose(rollout))
        value += discount * outcome.reward
        discount *= gamma
        steps += 1
    return value


def value_estimate(
    state: BuchbergerState,
    kind: str,
    gamma: float = TrainingConstants.GAMMA,
    max_steps: int = TrainingConstants.MAX_ROLLOUT_STEPS,
) -> float:
    """
    Value of a state.

    degree_rollout: discounted Degree-strategy return from the state
    pairs_left: minus the number of remaining pairs
    none: zero
    """
    if not state.P:
        return 0.0
    if kind == TrainingConstants.DEGREE_ROLLOUT:
        return degree_rollout_value(state, gamma, max_steps)
    if kind == TrainingConstants.PAIRS_LEFT:
        return -float(len(state.P))
    if kind == TrainingConstants.NO_VALUE:
        return 0.0
    raise InvalidArgumentError(f"unknown value kind {kind!r}")
