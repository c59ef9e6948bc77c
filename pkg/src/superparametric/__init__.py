"""
Super-parametric density estimation

Maximum-likelihood densities over Bezier, B-spline and piecewise Bezier
window bases with many more parameters than samples.
"""

__version__ = "1.0.0"

from .basis.window_basis import BasisFamily
from .config.settings import SolverConfig, validate_config
from .estimator.density import DensityEstimate, kl_sanity, l1_error, log_likelihood
from .estimator.graph import build_graph, create_app, fit
from .exceptions import (
    ConvergenceError,
    CoverageError,
    DegenerateBasisError,
    DesignMatrixError,
    SampleDataError,
    SuperParametricError,
)
from .formats.model_file import read_model, write_model
from .monitoring.metrics import metrics_collector
from .partition.domain_partition import partition
from .sampling.sample_lab import SampleSet, SampleSource, generate

__all__ = [
    "BasisFamily",
    "ConvergenceError",
    "CoverageError",
    "DegenerateBasisError",
    "DensityEstimate",
    "DesignMatrixError",
    "SampleDataError",
    "SampleSet",
    "SampleSource",
    "SolverConfig",
    "SuperParametricError",
    "build_graph",
    "create_app",
    "fit",
    "generate",
    "kl_sanity",
    "l1_error",
    "log_likelihood",
    "metrics_collector",
    "partition",
    "read_model",
    "validate_config",
    "write_model",
]
