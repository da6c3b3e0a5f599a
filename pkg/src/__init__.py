"""
Groebner RL - pair selection strategies for Buchberger's algorithm.
Exact Groebner basis computation over prime fields, random binomial ideal
distributions, and a policy-gradient agent that learns which S-pair to
reduce next.
"""

__version__ = "1.0.0"
__description__ = "Learned and classical S-pair selection for Buchberger's algorithm"

# Import main components for easy access
from .core import (
    config_manager,
    get_logger,
    setup_logging,
    FieldConstants,
    GroebnerConstants,
    TrainingConstants,
)

__all__ = [
    "__version__",
    "__description__",
    "config_manager",
    "get_logger",
    "setup_logging",
    "FieldConstants",
    "GroebnerConstants",
    "TrainingConstants",
]
