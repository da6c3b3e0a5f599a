"""
Unit tests for configuration loading.
"""

import json

import pytest

from src.core.config import ConfigManager, TrainerConfig, load_trainer_config
from src.core.constants import EnvironmentConstants, TrainingConstants
from src.core.exceptions import ConfigurationError


class TestTrainerConfig:
    """Test trainer hyperparameters."""

    def test_defaults(self):
        """Defaults match the documented training constants."""
        config = TrainerConfig().validate()
        assert config.gamma == TrainingConstants.GAMMA
        assert config.clip_epsilon == 0.2
        assert config.value_kind == "degree_rollout"
        assert config.distributions == ["3-20-10 weighted"]

    def test_unknown_key(self):
        """Unknown keys are rejected by name."""
        with pytest.raises(ConfigurationError, match="'batch_size'"):
            TrainerConfig.from_dict({"batch_size": 32})

    @pytest.mark.parametrize(
        "key,value",
        [("gamma", 1.5), ("lam", -0.1), ("learning_rate", -1.0), ("episodes_per_epoch", 0),
         ("value_kind", "oracle"), ("observation_mode", "pixels"), ("distributions", []),
         ("prime", 1), ("prime", True)],
    )
    def test_invalid_values(self, key, value):
        """Out-of-range values name the offending field."""
        with pytest.raises(ConfigurationError, match=f"'{key}'"):
            TrainerConfig.from_dict({key: value})

    def test_single_distribution_string(self):
        """A bare distribution string becomes a one-element list."""
        assert TrainerConfig.from_dict({"distributions": "2-5-3"}).distributions == ["2-5-3"]

    def test_integer_rates(self):
        """Integral rates are accepted as floats."""
        assert TrainerConfig.from_dict({"gamma": 1}).gamma == 1.0


class TestLoadTrainerConfig:
    """Test configuration files."""

    def test_toml(self, tmp_path):
        """TOML files load with overrides applied on top."""
        path = tmp_path / "train.toml"
        path.write_text('epochs = 7\nlearning_rate = 0.001\ndistributions = ["2-5-3 uniform"]\n', encoding="utf-8")
        config = load_trainer_config(str(path), {"seed": 9})
        assert config.epochs == 7
        assert config.learning_rate == 0.001
        assert config.distributions == ["2-5-3 uniform"]
        assert config.seed == 9

    def test_json(self, tmp_path):
        """JSON files load too."""
        path = tmp_path / "train.json"
        path.write_text(json.dumps({"value_kind": "none"}), encoding="utf-8")
        assert load_trainer_config(str(path)).value_kind == "none"

    def test_missing_file(self, tmp_path):
        """A missing file is a configuration error."""
        with pytest.raises(ConfigurationError, match="file not found"):
            load_trainer_config(str(tmp_path / "absent.toml"))

    def test_malformed_file(self, tmp_path):
        """Unparsable files are configuration errors."""
        path = tmp_path / "train.toml"
        path.write_text("epochs = = 3\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="cannot parse"):
            load_trainer_config(str(path))


class TestConfigManager:
    """Test environment-driven settings."""

    def test_environment_values(self, tmp_path, monkeypatch):
        """Values come from the environment."""
        monkeypatch.setenv(EnvironmentConstants.SEED, "7")
        monkeypatch.setenv(EnvironmentConstants.WORKERS, "3")
        monkeypatch.setenv(EnvironmentConstants.LOG_LEVEL, "debug")
        app = ConfigManager(str(tmp_path / ".env")).app
        assert app.seed == 7
        assert app.workers == 3
        assert app.log_level == "DEBUG"

    def test_invalid_integer(self, tmp_path, monkeypatch):
        """Non-integer settings are rejected."""
        monkeypatch.setenv(EnvironmentConstants.WORKERS, "many")
        with pytest.raises(ConfigurationError, match=EnvironmentConstants.WORKERS):
            ConfigManager(str(tmp_path / ".env"))

    def test_invalid_log_level(self, tmp_path, monkeypatch):
        """Unknown log levels are rejected."""
        monkeypatch.setenv(EnvironmentConstants.LOG_LEVEL, "chatty")
        with pytest.raises(ConfigurationError, match="Invalid log level"):
            ConfigManager(str(tmp_path / ".env"))

    def test_summary(self, tmp_path, monkeypatch):
        """The summary reports the loaded settings."""
        monkeypatch.setenv(EnvironmentConstants.SEED, "7")
        monkeypatch.setenv(EnvironmentConstants.PRIME, "101")
        summary = ConfigManager(str(tmp_path / ".env")).get_config_summary()
        assert summary["app"]["seed"] == 7
        assert summary["app"]["prime"] == 101
