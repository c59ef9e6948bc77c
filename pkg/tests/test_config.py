"""
Unit tests for configuration and logging setup
"""
import logging

import pytest
from pydantic import ValidationError
from src.superparametric.config import SolverConfig, set_level, setup_logger, validate_config
from src.superparametric.config.settings import _parse_bool


class TestSolverConfig:
    """Tests for SolverConfig"""

    def test_defaults(self):
        config = SolverConfig()
        assert config.r > 0
        assert config.max_outer >= 1
        assert config.delta_inner is None
        assert config.min_piece_size is None
        assert config.accelerate_outer is True

    def test_resolved_delta(self):
        assert SolverConfig().resolved_delta(180) == pytest.approx(1.8e-7)
        assert SolverConfig(delta_inner=1e-6).resolved_delta(180) == 1e-6

    def test_resolved_min_piece_size(self):
        config = SolverConfig()
        assert config.resolved_min_piece_size(180) == 30
        assert config.resolved_min_piece_size(181) == 31
        assert config.resolved_min_piece_size(600) == 100
        assert SolverConfig(min_piece_size=5).resolved_min_piece_size(600) == 5

    @pytest.mark.parametrize("field, value", [
        ("r", 0.0),
        ("eps_outer", -1e-8),
        ("max_outer", 0),
        ("bezier_degree", 0),
        ("bspline_order", 0),
        ("min_gap_ratio", -1.0),
        ("extension_fraction", float("inf")),
    ])
    def test_invalid_values(self, field, value):
        with pytest.raises(ValidationError):
            SolverConfig(**{field: value})

    def test_unknown_field(self):
        with pytest.raises(ValidationError):
            SolverConfig(degree=3)

    def test_frozen(self):
        config = SolverConfig()
        with pytest.raises(ValidationError):
            config.r = 2.0

    def test_snapshot_round_trip(self):
        config = SolverConfig(r=2.0, bezier_degree=6, min_piece_size=12)
        assert SolverConfig.model_validate(config.model_dump()) == config


class TestValidateConfig:
    """Tests for environment validation"""

    def test_clean_environment(self, monkeypatch):
        monkeypatch.delenv("SUPERPARAM_MAX_OUTER", raising=False)
        validate_config()

    def test_malformed_variable(self, monkeypatch):
        monkeypatch.setenv("SUPERPARAM_MAX_OUTER", "many")
        with pytest.raises(EnvironmentError) as info:
            validate_config()
        assert "SUPERPARAM_MAX_OUTER" in str(info.value)

    def test_malformed_boolean(self, monkeypatch):
        monkeypatch.setenv("SUPERPARAM_ACCELERATE_OUTER", "sometimes")
        with pytest.raises(EnvironmentError) as info:
            validate_config()
        assert "SUPERPARAM_ACCELERATE_OUTER" in str(info.value)

    @pytest.mark.parametrize("raw, expected", [("1", True), ("Yes", True), ("off", False), (" false ", False)])
    def test_boolean_spellings(self, monkeypatch, raw, expected):
        monkeypatch.setenv("SUPERPARAM_ACCELERATE_OUTER", raw)
        validate_config()
        assert _parse_bool(raw) is expected


class TestLogger:
    """Tests for logger setup"""

    def test_handlers_not_duplicated(self):
        first = setup_logger("superparametric.test")
        count = len(first.handlers)
        second = setup_logger("superparametric.test")
        assert second is first
        assert len(second.handlers) == count

    def test_set_level(self):
        test_logger = setup_logger("superparametric.level_test", "INFO")
        set_level(test_logger, "DEBUG")
        assert test_logger.level == logging.DEBUG
        assert all(handler.level == logging.DEBUG for handler in test_logger.handlers)
