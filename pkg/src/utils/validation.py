"""
Input validation utilities for the command-line surface and trainer.
Every check raises ValidationError naming the offending field.
"""

from typing import Optional

from ..algebra import is_prime
from ..core import (
    EnvConstants,
    GroebnerConstants,
    GroebnerRLException,
    TrainingConstants,
    ValidationError,
    get_logger,
)
from ..ideals import DistributionSpec

# Get logger for this module
logger = get_logger("validation")


def validate_positive_int(value, field_name: str, allow_zero: bool = False) -> int:
    """
    Validate a positive (or non-negative) integer.

    Args:
        value: Value to validate; integral strings are accepted
        field_name: Name reported in the error
        allow_zero: Whether 0 is accepted

    Returns:
        The value as int

    Raises:
        ValidationError: If the value is not an integer in range
    """
    if isinstance(value, bool):
        raise ValidationError(f"expected an integer, got {value!r}", field_name=field_name)
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"expected an integer, got {value!r}", field_name=field_name)
    if isinstance(value, float) and value != number:
        raise ValidationError(f"expected an integer, got {value!r}", field_name=field_name)

    minimum = 0 if allow_zero else 1
    if number < minimum:
        raise ValidationError(f"must be at least {minimum}, got {number}", field_name=field_name)
    return number


def validate_probability(value, field_name: str, allow_zero: bool = True) -> float:
    """Validate a real number in [0, 1] (or (0, 1] when allow_zero is False)."""
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"expected a number, got {value!r}", field_name=field_name)
    low_ok = number >= 0 if allow_zero else number > 0
    if not (low_ok and number <= 1):
        raise ValidationError(f"must lie in [0, 1], got {number}", field_name=field_name)
    return number


def validate_prime(value, field_name: str = "prime") -> int:
    number = validate_positive_int(value, field_name)
    if not is_prime(number):
        raise ValidationError(f"{number} is not prime", field_name=field_name)
    return number


def validate_strategy_name(name: str, allow_learned: bool = False) -> str:
    """
    Normalize a strategy name.

    Args:
        name: Strategy name, case-insensitive
        allow_learned: Whether "learned" is accepted

    Returns:
        Lower-case strategy name
    """
    if not isinstance(name, str) or not name.strip():
        raise ValidationError("strategy name cannot be empty", field_name="strategy")
    normalized = name.strip().lower()
    allowed = list(GroebnerConstants.ALL_STRATEGIES)
    if allow_learned:
        allowed.append("learned")
    if normalized not in allowed:
        raise ValidationError(
            f"unknown strategy {name!r}; choose from {', '.join(allowed)}",
            field_name="strategy",
        )
    return normalized


def validate_distribution_string(text: str, p: Optional[int] = None) -> DistributionSpec:
    """Parse a distribution such as '3-20-10 weighted' into a DistributionSpec."""
    if not isinstance(text, str) or not text.strip():
        raise ValidationError("distribution cannot be empty", field_name="distribution")
    try:
        if p is None:
            return DistributionSpec.parse(text)
        return DistributionSpec.parse(text, p)
    except GroebnerRLException as e:
        raise ValidationError(e.message, field_name="distribution") from e


def validate_observation_mode(mode: str) -> str:
    if mode not in EnvConstants.OBSERVATION_MODES:
        raise ValidationError(
            f"unknown observation mode {mode!r}; choose from {', '.join(EnvConstants.OBSERVATION_MODES)}",
            field_name="observation_mode",
        )
    return mode


def validate_value_kind(kind: str) -> str:
    if kind not in TrainingConstants.VALUE_KINDS:
        raise ValidationError(
            f"unknown value kind {kind!r}; choose from {', '.join(TrainingConstants.VALUE_KINDS)}",
            field_name="value_kind",
        )
    return kind
