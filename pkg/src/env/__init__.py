"""
Environment module: Buchberger's algorithm as an episodic decision process.
"""

from .buchberger_env import BuchbergerEnv, Observation, StepResult, encode_observation, observation_width

__all__ = [
    "BuchbergerEnv",
    "Observation",
    "StepResult",
    "encode_observation",
    "observation_width",
]
