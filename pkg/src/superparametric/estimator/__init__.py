"""
Estimator: fit workflow, fitted densities and their metrics
"""

from .density import (
    DensityEstimate,
    KLSanity,
    kl_sanity,
    l1_error,
    log_likelihood,
    pdf,
    piecewise_quadrature,
    quadrature,
)
from .graph import build_graph, create_app, fit
from .state import FitState

__all__ = [
    "DensityEstimate",
    "FitState",
    "KLSanity",
    "build_graph",
    "create_app",
    "fit",
    "kl_sanity",
    "l1_error",
    "log_likelihood",
    "pdf",
    "piecewise_quadrature",
    "quadrature",
]
