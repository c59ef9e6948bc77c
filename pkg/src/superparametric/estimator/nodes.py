"""
Fit Pipeline Nodes

Each node reads the state and returns it updated. Failures are logged and
parked in ``error`` so the graph can route straight to the end.
"""
import time

from ..basis.window_basis import (
    BasisFamily,
    Domain,
    coverage_check,
    extend_domain,
    make_bezier_basis,
    make_bspline_basis,
    make_piecewise_bezier_basis,
)
from ..config.logger import logger
from ..exceptions import CoverageError, DegenerateBasisError, SampleDataError, SuperParametricError
from ..monitoring.metrics import metrics_collector
from ..partition.domain_partition import partition
from ..solver.likelihood_solver import outer_fit
from .state import FitState


def _failed(state: FitState, error: SuperParametricError) -> FitState:
    logger.error(f"Fit failed: {error}", exc_info=error)
    return {**state, "error": error}


def validate_samples(state: FitState) -> FitState:
    """
    Checks the samples against the method's minimums.
    """
    samples, method, config = state["samples"], state["method"], state["config"]
    logger.info(f"Starting {method.value} fit on {samples.size} samples")

    if samples.size < 2:
        return _failed(state, SampleDataError(f"a fit needs at least 2 samples, got {samples.size}"))
    if method is BasisFamily.BSPLINE and samples.size - 1 < config.bspline_order:
        return _failed(state, SampleDataError(
            f"B-splines of order {config.bspline_order} need at least {config.bspline_order + 1} samples"
        ))
    if samples.values[-1] <= samples.values[0]:
        return _failed(state, DegenerateBasisError("degenerate basis: all samples are equal"))
    return state


def bezier_node(state: FitState) -> FitState:
    """Single Bezier basis on the extended sample range."""
    x, config = state["samples"].values, state["config"]
    domain = extend_domain(x[0], x[-1], config.extension_fraction)
    basis = make_bezier_basis(domain, config.bezier_degree)
    logger.debug(f"Bezier basis on [{domain.lo}, {domain.hi}] with {basis.window_count} windows")
    return {**state, "basis": basis}


def bspline_node(state: FitState) -> FitState:
    """B-spline basis with the sorted samples as knots."""
    config = state["config"]
    try:
        basis = make_bspline_basis(state["samples"].values, config.bspline_order,
                                   config.extension_fraction, config.area_floor)
    except SuperParametricError as e:
        return _failed(state, e)
    logger.debug(f"B-spline basis of order {config.bspline_order} with {basis.window_count} windows")
    return {**state, "basis": basis}


def partition_node(state: FitState) -> FitState:
    """Cuts the sample range at large interior gaps."""
    return {**state, "partition": partition(state["samples"], state["config"])}


def piecewise_node(state: FitState) -> FitState:
    """
    One Bezier basis per partition piece, concatenated. Only the two outer
    ends are extended; inner piece edges stay on the samples so the removed
    gaps carry no density.
    """
    x, config = state["samples"].values, state["config"]
    pad = config.extension_fraction * (x[-1] - x[0])
    try:
        domains = state["partition"].domains()
    except SuperParametricError as e:
        return _failed(state, e)
    domains[0] = Domain(domains[0].lo - pad, domains[0].hi)
    domains[-1] = Domain(domains[-1].lo, domains[-1].hi + pad)
    basis = make_piecewise_bezier_basis(domains, config.bezier_degree)
    logger.debug(f"Piecewise Bezier basis: {len(domains)} piece(s), {basis.window_count} windows")
    return {**state, "basis": basis}


def coverage_node(state: FitState) -> FitState:
    """Every sample must see at least one positive window."""
    uncovered = coverage_check(state["basis"], state["samples"])
    if uncovered:
        return _failed({**state, "uncovered": uncovered},
                       CoverageError(f"{len(uncovered)} sample(s) are not covered by any window", uncovered))
    return {**state, "uncovered": []}


def solve_node(state: FitState) -> FitState:
    """Runs the outer/inner likelihood iteration."""
    start = time.perf_counter()
    try:
        coefficients, report = outer_fit(state["basis"], state["samples"], state["config"])
    except SuperParametricError as e:
        metrics_collector.record_failure(e, time.perf_counter() - start)
        return _failed({**state, "fit_report": getattr(e, "report", None)}, e)

    elapsed = time.perf_counter() - start
    metrics_collector.record_fit(report.converged, report.outer_iterations, report.inner_updates_total, elapsed)
    logger.info(f"Fit finished after {report.outer_iterations} outer iteration(s) "
                f"({report.terminated_by.value}), sum c = {coefficients.sum():.12f}")
    return {**state, "coefficients": coefficients, "fit_report": report}
