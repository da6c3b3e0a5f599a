"""
Core module for the Groebner selection-strategy toolkit.
Contains fundamental components like configuration, logging, constants, and exceptions.
"""

from .constants import (
    FieldConstants,
    GroebnerConstants,
    DistributionConstants,
    EnvConstants,
    TrainingConstants,
    LoggingConstants,
    ExitCodes,
    EnvironmentConstants,
)
from .exceptions import (
    GroebnerRLException,
    DimensionError,
    DivisibilityError,
    FieldZeroDivisionError,
    InvalidArgumentError,
    InvalidStateError,
    InvalidActionError,
    ShapeError,
    ParseError,
    ModelFormatError,
    RolloutLimitError,
    NonFiniteLossError,
    ValidationError,
    ConfigurationError,
)
from .logging_config import get_logger, log_function_call, log_performance, setup_logging
from .config import (
    AppConfig,
    TrainerConfig,
    config_manager,
    check_python_version,
    load_trainer_config,
)

__all__ = [
    # Constants
    "FieldConstants",
    "GroebnerConstants",
    "DistributionConstants",
    "EnvConstants",
    "TrainingConstants",
    "LoggingConstants",
    "ExitCodes",
    "EnvironmentConstants",

    # Exceptions
    "GroebnerRLException",
    "DimensionError",
    "DivisibilityError",
    "FieldZeroDivisionError",
    "InvalidArgumentError",
    "InvalidStateError",
    "InvalidActionError",
    "ShapeError",
    "ParseError",
    "ModelFormatError",
    "RolloutLimitError",
    "NonFiniteLossError",
    "ValidationError",
    "ConfigurationError",

    # Logging
    "get_logger",
    "log_function_call",
    "log_performance",
    "setup_logging",

    # Configuration
    "AppConfig",
    "TrainerConfig",
    "config_manager",
    "check_python_version",
    "load_trainer_config",
]
