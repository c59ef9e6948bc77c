"""
Fit Pipeline State Definition

Defines the state that flows through the LangGraph fit workflow.
"""
from typing import List, Optional, TypedDict

import numpy as np

from ..basis.window_basis import BasisFamily, WindowBasis
from ..config.settings import SolverConfig
from ..exceptions import SuperParametricError
from ..partition.domain_partition import DomainPartition
from ..sampling.sample_lab import SampleSet
from ..solver.likelihood_solver import FitReport


class FitState(TypedDict):
    """State that flows through the graph"""
    # Inputs
    samples: SampleSet
    method: BasisFamily
    config: SolverConfig

    # Basis construction
    partition: Optional[DomainPartition]
    basis: Optional[WindowBasis]
    uncovered: List[int]

    # Solver output
    coefficients: Optional[np.ndarray]
    fit_report: Optional[FitReport]

    # First failure; later nodes are skipped once set
    error: Optional[SuperParametricError]
