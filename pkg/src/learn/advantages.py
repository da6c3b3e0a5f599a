"""
Generalized advantage estimation.
"""

from typing import Sequence, Tuple

import numpy as np

from ..core import InvalidArgumentError


def gae(
    rewards: Sequence[float],
    values: Sequence[float],
    gamma: float,
    lam: float,
    bootstrap: float = 0.0,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Advantages and value targets of one episode.

    delta_t = r_t + gamma*V(s_{t+1}) - V(s_t), with V after the last step
    equal to `bootstrap` (0 at termination, a value estimate if the episode
    was truncated). A_t = delta_t + gamma*lam*A_{t+1}.

    Returns:
        (advantages, value targets A_t + V(s_t))
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if rewards.shape != values.shape:
        raise InvalidArgumentError(f"{len(rewards)} rewards but {len(values)} values")

    advantages = np.zeros_like(rewards)
    last = 0.0
    next_value = bootstrap
    for t in reversed(range(len(rewards))):
        delta = rewards[t] + gamma * next_value - values[t]
        advantages[t] = last = delta + gamma * lam * last
        next_value = values[t]
    return advantages, advantages + values


def normalize_advantages(advantages: np.ndarray) -> np.ndarray:
    """Shift to mean 0 and scale to std 1; a constant batch maps to zeros."""
    advantages = np.asarray(advantages, dtype=np.float64)
    if advantages.size == 0:
        return advantages
    centered = advantages - advantages.mean()
    std = centered.std()
    if std < 1e-12:
        return np.zeros_like(centered)
    return centered / std
