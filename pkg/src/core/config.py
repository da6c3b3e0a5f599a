"""
Configuration management for the Groebner selection-strategy toolkit.
Handles environment variables, trainer configuration files and validation.
"""

import json
import math
import os
import sys
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, fields, asdict
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from .constants import (
    DistributionConstants,
    EnvConstants,
    EnvironmentConstants,
    FieldConstants,
    LoggingConstants,
    TrainingConstants,
)
from .exceptions import ConfigurationError
from .logging_config import get_logger

logger = get_logger("config")


def check_python_version():
    """
    Check if the current Python version meets the minimum requirement.

    Raises:
        ConfigurationError: If Python version is below 3.11
    """
    required_version = (3, 11)
    current_version = sys.version_info[:2]

    if current_version < required_version:
        error_msg = (
            f"Python {required_version[0]}.{required_version[1]}+ is required. "
            f"Current version: {current_version[0]}.{current_version[1]}.{sys.version_info[2]}"
        )
        logger.error(error_msg)
        raise ConfigurationError(error_msg)

    logger.debug(
        f"Python version check passed: {current_version[0]}.{current_version[1]}.{sys.version_info[2]}"
    )


@dataclass
class AppConfig:
    """Process-wide settings read from the environment."""

    log_level: str = LoggingConstants.WARNING
    log_dir: str = "logs"
    log_to_file: bool = False
    workers: int = 1
    seed: int = 0
    prime: int = FieldConstants.DEFAULT_PRIME


@dataclass
class TrainerConfig:
    """Hyperparameters of the policy-gradient trainer."""

    gamma: float = TrainingConstants.GAMMA
    lam: float = TrainingConstants.LAM
    clip_epsilon: float = TrainingConstants.CLIP_EPSILON
    learning_rate: float = TrainingConstants.LEARNING_RATE
    episodes_per_epoch: int = TrainingConstants.EPISODES_PER_EPOCH
    max_updates_per_epoch: int = TrainingConstants.MAX_UPDATES_PER_EPOCH
    kl_limit: float = TrainingConstants.KL_LIMIT
    epochs: int = TrainingConstants.EPOCHS
    max_episode_length: int = TrainingConstants.MAX_EPISODE_LENGTH
    value_kind: str = TrainingConstants.DEGREE_ROLLOUT
    observation_mode: str = EnvConstants.FULL
    distributions: List[str] = field(default_factory=lambda: [DistributionConstants.DEFAULT_SPEC])
    seed: int = 0
    hidden_size: int = TrainingConstants.HIDDEN_SIZE
    checkpoint_every: int = TrainingConstants.CHECKPOINT_EVERY
    max_rollout_steps: int = TrainingConstants.MAX_ROLLOUT_STEPS
    workers: int = 1
    prime: int = FieldConstants.DEFAULT_PRIME

    def validate(self) -> "TrainerConfig":
        """
        Check every field, naming the first offending one.

        Raises:
            ConfigurationError: If a field is out of range
        """
        for name in ("gamma", "lam"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise ConfigurationError(f"must lie in [0, 1], got {value}", config_key=name)

        for name in ("clip_epsilon", "kl_limit", "learning_rate"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ConfigurationError(f"must be finite and >= 0, got {value}", config_key=name)

        for name in ("episodes_per_epoch", "max_episode_length", "hidden_size",
                     "checkpoint_every", "max_rollout_steps", "workers"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigurationError(f"must be a positive integer, got {value!r}", config_key=name)

        if not isinstance(self.prime, int) or isinstance(self.prime, bool) or self.prime < 2:
            raise ConfigurationError(f"must be an integer >= 2, got {self.prime!r}", config_key="prime")

        for name in ("epochs", "max_updates_per_epoch", "seed"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ConfigurationError(f"must be a non-negative integer, got {value!r}", config_key=name)

        if self.value_kind not in TrainingConstants.VALUE_KINDS:
            raise ConfigurationError(
                f"must be one of {TrainingConstants.VALUE_KINDS}, got {self.value_kind!r}",
                config_key="value_kind",
            )
        if self.observation_mode not in EnvConstants.OBSERVATION_MODES:
            raise ConfigurationError(
                f"must be one of {EnvConstants.OBSERVATION_MODES}, got {self.observation_mode!r}",
                config_key="observation_mode",
            )
        if not self.distributions or not all(isinstance(d, str) for d in self.distributions):
            raise ConfigurationError("must be a non-empty list of strings", config_key="distributions")

        return self

    def to_dict(self) -> Dict[str, Any]:
        """Return the configuration as a plain dictionary."""
        return asdict(self)

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> "TrainerConfig":
        """
        Build a validated configuration from a key-value mapping.

        Raises:
            ConfigurationError: On unknown keys or invalid values
        """
        known = {f.name for f in fields(cls)}
        for key in values:
            if key not in known:
                raise ConfigurationError("unknown configuration key", config_key=key)

        values = dict(values)
        if isinstance(values.get("distributions"), str):
            values["distributions"] = [values["distributions"]]
        for key in ("gamma", "lam", "clip_epsilon", "learning_rate", "kl_limit"):
            if key in values and isinstance(values[key], int) and not isinstance(values[key], bool):
                values[key] = float(values[key])

        return cls(**values).validate()


def load_trainer_config(path: str, overrides: Optional[Dict[str, Any]] = None) -> TrainerConfig:
    """
    Load a trainer configuration from a TOML or JSON file.

    Args:
        path: File path ending in .toml or .json
        overrides: Optional values applied on top of the file contents

    Returns:
        Validated TrainerConfig

    Raises:
        ConfigurationError: If the file cannot be read or contains invalid fields
    """
    config_path = Path(path)
    if not config_path.exists():
        raise ConfigurationError(f"file not found: {config_path}", config_key="config")

    try:
        if config_path.suffix == ".toml":
            with open(config_path, "rb") as f:
                values = tomllib.load(f)
        else:
            with open(config_path, "r") as f:
                values = json.load(f)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"cannot parse {config_path}: {e}", config_key="config")

    if overrides:
        values.update(overrides)

    logger.info(f"Loaded trainer configuration from {config_path}")
    return TrainerConfig.from_dict(values)


class ConfigManager:
    """Manages application configuration from environment variables and .env files."""

    def __init__(self, env_file: Optional[str] = None):
        """Initialize configuration manager."""
        self._app_config: Optional[AppConfig] = None
        self._env_file = env_file
        self._load_configuration()

    def _load_configuration(self):
        """Load all configuration from environment variables."""
        try:
            load_dotenv(self._env_file, override=False)
            self._app_config = self._load_app_config()
            logger.debug("Configuration loaded successfully")

        except ConfigurationError:
            raise
        except Exception as e:
            logger.error(f"Failed to load configuration: {e}")
            raise ConfigurationError(f"Configuration loading failed: {e}")

    def _read_int(self, key: str, default: int, minimum: int) -> int:
        raw = os.getenv(key)
        if raw is None or raw == "":
            return default
        try:
            value = int(raw)
        except ValueError:
            raise ConfigurationError(f"expected an integer, got {raw!r}", config_key=key)
        if value < minimum:
            raise ConfigurationError(f"must be >= {minimum}, got {value}", config_key=key)
        return value

    def _load_app_config(self) -> AppConfig:
        """Load application configuration from environment variables."""
        log_level = os.getenv(EnvironmentConstants.LOG_LEVEL, LoggingConstants.WARNING).upper()
        if log_level not in LoggingConstants.VALID_LEVELS:
            raise ConfigurationError(
                f"Invalid log level: {log_level}. Must be one of: {LoggingConstants.VALID_LEVELS}",
                config_key=EnvironmentConstants.LOG_LEVEL,
            )

        return AppConfig(
            log_level=log_level,
            log_dir=os.getenv(EnvironmentConstants.LOG_DIR, "logs"),
            log_to_file=os.getenv(EnvironmentConstants.LOG_TO_FILE, "false").lower() == "true",
            workers=self._read_int(EnvironmentConstants.WORKERS, 1, 1),
            seed=self._read_int(EnvironmentConstants.SEED, 0, 0),
            prime=self._read_int(EnvironmentConstants.PRIME, FieldConstants.DEFAULT_PRIME, 2),
        )

    @property
    def app(self) -> AppConfig:
        """Get application configuration."""
        if self._app_config is None:
            raise ConfigurationError("Application configuration not loaded")
        return self._app_config

    def get_config_summary(self) -> Dict[str, Any]:
        """Get a summary of the current configuration."""
        return {"app": asdict(self.app)}


# Global configuration instance
config_manager = ConfigManager()
