"""
Constrained likelihood solver
"""

from .likelihood_solver import (
    AlphaState,
    DesignMatrix,
    FitReport,
    GramMatrix,
    TerminationReason,
    UVState,
    build_design,
    build_gram,
    compute_residual,
    extrapolate,
    extrapolation_step,
    inner_solve,
    outer_fit,
    outer_residual,
    recover_u,
    rescale_v,
    update_coordinate,
)

__all__ = [
    "AlphaState",
    "DesignMatrix",
    "FitReport",
    "GramMatrix",
    "TerminationReason",
    "UVState",
    "build_design",
    "build_gram",
    "compute_residual",
    "extrapolate",
    "extrapolation_step",
    "inner_solve",
    "outer_fit",
    "outer_residual",
    "recover_u",
    "rescale_v",
    "update_coordinate",
]
