"""
Configuration settings for the super-parametric density estimator

Defaults are loaded from environment variables (a .env file in the project
root is honoured). See .env.example for the recognised variables.
"""
import math
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

# Load environment variables from .env file
load_dotenv()

_ENV_PREFIX = "SUPERPARAM_"


def _parse_bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


# name -> (parser, fallback)
_ENV_DEFAULTS = {
    "R": (float, "1.0"),
    "EPS_OUTER": (float, "1e-8"),
    "MAX_OUTER": (int, "200"),
    "MAX_INNER_UPDATES": (int, "1000000"),
    "ACCELERATE_OUTER": (_parse_bool, "true"),
    "BEZIER_DEGREE": (int, "10"),
    "BSPLINE_ORDER": (int, "12"),
    "EXTENSION_FRACTION": (float, "0.05"),
    "AREA_FLOOR": (float, "1e-12"),
    "MIN_GAP_RATIO": (float, "20.0"),
    "BENCH_WORKERS": (int, "1"),
}


def _read_env(name: str):
    parser, fallback = _ENV_DEFAULTS[name]
    raw = os.getenv(_ENV_PREFIX + name, fallback)
    try:
        return parser(raw)
    except ValueError:
        return parser(fallback)


DEFAULT_R = _read_env("R")
DEFAULT_EPS_OUTER = _read_env("EPS_OUTER")
DEFAULT_MAX_OUTER = _read_env("MAX_OUTER")
DEFAULT_MAX_INNER_UPDATES = _read_env("MAX_INNER_UPDATES")
DEFAULT_ACCELERATE_OUTER = _read_env("ACCELERATE_OUTER")
DEFAULT_BEZIER_DEGREE = _read_env("BEZIER_DEGREE")
DEFAULT_BSPLINE_ORDER = _read_env("BSPLINE_ORDER")
DEFAULT_EXTENSION_FRACTION = _read_env("EXTENSION_FRACTION")
DEFAULT_AREA_FLOOR = _read_env("AREA_FLOOR")
DEFAULT_MIN_GAP_RATIO = _read_env("MIN_GAP_RATIO")
DEFAULT_BENCH_WORKERS = _read_env("BENCH_WORKERS")

# Per-sample inner tolerance; delta = DELTA_PER_SAMPLE * m
DELTA_PER_SAMPLE = 1e-9


# Validation
def validate_config():
    """Validate that every SUPERPARAM_* variable that is set can be parsed"""
    malformed = []

    for name, (parser, _) in _ENV_DEFAULTS.items():
        raw = os.getenv(_ENV_PREFIX + name)
        if raw is None:
            continue
        try:
            parser(raw)
        except ValueError:
            malformed.append(f"{_ENV_PREFIX}{name}={raw!r}")

    if malformed:
        raise EnvironmentError(
            f"Malformed environment variables: {', '.join(malformed)}\n"
            f"Please fix your .env file. See .env.example for reference."
        )


class SolverConfig(BaseModel):
    """
    Constants for basis construction, partitioning and the likelihood solver.

    ``delta_inner`` and ``min_piece_size`` depend on the sample size when left
    unset; use ``resolved_delta`` / ``resolved_min_piece_size``.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    r: float = Field(default=DEFAULT_R, gt=0)
    eps_outer: float = Field(default=DEFAULT_EPS_OUTER, gt=0)
    delta_inner: Optional[float] = Field(default=None, gt=0)
    max_outer: int = Field(default=DEFAULT_MAX_OUTER, ge=1)
    max_inner_updates: int = Field(default=DEFAULT_MAX_INNER_UPDATES, ge=1)
    accelerate_outer: bool = DEFAULT_ACCELERATE_OUTER
    bezier_degree: int = Field(default=DEFAULT_BEZIER_DEGREE, ge=1)
    bspline_order: int = Field(default=DEFAULT_BSPLINE_ORDER, ge=1)
    min_piece_size: Optional[int] = Field(default=None, ge=1)
    min_gap_ratio: float = Field(default=DEFAULT_MIN_GAP_RATIO, ge=0)
    area_floor: float = Field(default=DEFAULT_AREA_FLOOR, ge=0)
    extension_fraction: float = Field(default=DEFAULT_EXTENSION_FRACTION, ge=0)

    @field_validator("r", "eps_outer", "delta_inner", "min_gap_ratio", "area_floor", "extension_fraction")
    @classmethod
    def _finite(cls, value):
        if value is not None and not math.isfinite(value):
            raise ValueError("must be finite")
        return value

    def resolved_delta(self, sample_count: int) -> float:
        """Inner residual tolerance; E sums one residual per sample."""
        if self.delta_inner is not None:
            return self.delta_inner
        return DELTA_PER_SAMPLE * max(sample_count, 1)

    def resolved_min_piece_size(self, sample_count: int) -> int:
        """Smallest piece the partitioner may leave behind."""
        if self.min_piece_size is not None:
            return self.min_piece_size
        return max(30, math.ceil(sample_count / 6))
