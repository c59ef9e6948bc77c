"""
LangGraph Fit Workflow

__start__ -> validate_samples -> {bezier | bspline | partition -> piecewise}
-> coverage -> solve -> __end__

Any node that parks an error sends the run straight to __end__; ``fit``
re-raises it.
"""
from functools import lru_cache
from typing import Optional, Union

from langgraph.graph import StateGraph, START, END

from ..basis.window_basis import BasisFamily
from ..config.logger import logger
from ..config.settings import SolverConfig
from ..sampling.sample_lab import SampleSet
from .density import DensityEstimate
from .nodes import (
    bezier_node,
    bspline_node,
    coverage_node,
    partition_node,
    piecewise_node,
    solve_node,
    validate_samples,
)
from .state import FitState


def route_method(state: FitState) -> str:
    """Pick the basis builder for the requested method, or end on error."""
    if state.get("error") is not None:
        return "end"
    return state["method"].value


def should_continue(state: FitState) -> str:
    """End early once a node has parked an error."""
    if state.get("error") is not None:
        return "end"
    return "continue"


def build_graph() -> StateGraph:
    """
    Build and return the LangGraph fit workflow.
    """
    logger.debug("Building fit workflow")

    workflow = StateGraph(FitState)

    workflow.add_node("validate_samples", validate_samples)
    workflow.add_node("bezier_node", bezier_node)
    workflow.add_node("bspline_node", bspline_node)
    workflow.add_node("partition_node", partition_node)
    workflow.add_node("piecewise_node", piecewise_node)
    workflow.add_node("coverage_node", coverage_node)
    workflow.add_node("solve_node", solve_node)

    workflow.add_edge(START, "validate_samples")

    workflow.add_conditional_edges(
        "validate_samples",
        route_method,
        {
            BasisFamily.BEZIER.value: "bezier_node",
            BasisFamily.BSPLINE.value: "bspline_node",
            BasisFamily.PIECEWISE_BEZIER.value: "partition_node",
            "end": END
        }
    )

    workflow.add_edge("partition_node", "piecewise_node")

    for builder in ("bezier_node", "bspline_node", "piecewise_node"):
        workflow.add_conditional_edges(
            builder,
            should_continue,
            {
                "continue": "coverage_node",
                "end": END
            }
        )

    workflow.add_conditional_edges(
        "coverage_node",
        should_continue,
        {
            "continue": "solve_node",
            "end": END
        }
    )

    workflow.add_edge("solve_node", END)

    return workflow


@lru_cache(maxsize=1)
def create_app():
    """Create and compile the fit workflow (compiled once per process)"""
    return build_graph().compile()


def fit(samples: SampleSet, method: Union[BasisFamily, str] = BasisFamily.BEZIER,
        config: Optional[SolverConfig] = None) -> DensityEstimate:
    """
    Fit a super-parametric density estimate to the samples.

    Args:
        samples: Sorted observations
        method: bezier, bspline or pbezier
        config: Solver constants (defaults from the environment)

    Returns:
        The fitted DensityEstimate

    Raises:
        SuperParametricError: whatever stopped the pipeline
    """
    method = BasisFamily(method)
    config = config or SolverConfig()

    initial_state: FitState = {
        "samples": samples,
        "method": method,
        "config": config,
        "partition": None,
        "basis": None,
        "uncovered": [],
        "coefficients": None,
        "fit_report": None,
        "error": None,
    }

    result = create_app().invoke(initial_state)

    if result.get("error") is not None:
        raise result["error"]

    return DensityEstimate(
        basis=result["basis"],
        coefficients=result["coefficients"],
        fit_report=result["fit_report"],
        method=method,
        config=config,
        partition=result.get("partition"),
    )
