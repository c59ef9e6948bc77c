"""
Configuration module
"""

from .settings import (
    DEFAULT_BENCH_WORKERS,
    SolverConfig,
    validate_config
)
from .logger import logger, setup_logger, set_level

__all__ = [
    "DEFAULT_BENCH_WORKERS",
    "SolverConfig",
    "validate_config",
    "logger",
    "setup_logger",
    "set_level",
]
