"""
Constrained likelihood solver

The density sum_i u_i v_i phi_i(x) is fitted under sum u_i^2 = r and
sum v_i^2 = r. With v fixed, the best u is u = (r/m) sum_j alpha_j b_j where
alpha solves sum_j D_kj alpha_k alpha_j = 1 for every sample k; that system
is solved one coordinate at a time, always the one with the largest
residual. v is then moved to theta * sqrt(u v) and the alternation repeats
until sum u_i v_i + eps >= r.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..basis.window_basis import WindowBasis
from ..config.logger import logger
from ..config.settings import SolverConfig
from ..exceptions import ConvergenceError, CoverageError, DesignMatrixError

# Full recomputation of D @ alpha every this many coordinate updates
_REFRESH_EVERY = 1024

# Extrapolation steplength cap starts here and grows or shrinks by this factor
_STEP_GROWTH = 4.0
# Smallest log weight, relative to the largest, an extrapolated v may carry
_LOG_FLOOR = -300.0


class TerminationReason(str, Enum):
    EPSILON_TEST = "epsilon_test"
    BUDGET = "budget"


class FitReport(BaseModel):
    """Iteration history of one outer fit"""
    outer_iterations: int = 0
    inner_updates_total: int = 0
    final_inner_residual: float = 0.0
    final_uv_sum: float = 0.0
    final_u_norm: float = 0.0
    uv_distance: float = 0.0
    uv_trace: List[float] = Field(default_factory=list)
    residual_trace: List[float] = Field(default_factory=list)
    inner_updates_trace: List[int] = Field(default_factory=list)
    loglik_trace: List[float] = Field(default_factory=list)
    terminated_by: Optional[TerminationReason] = None
    uv_distance_bound: float = 0.0
    extrapolations_accepted: int = 0
    extrapolations_rejected: int = 0

    @property
    def converged(self) -> bool:
        return self.terminated_by is TerminationReason.EPSILON_TEST


@dataclass(frozen=True)
class DesignMatrix:
    """b_ij = v_i phi_i(x_j); one row per window, one column per sample"""
    b: np.ndarray

    @property
    def window_count(self) -> int:
        return int(self.b.shape[0])

    @property
    def sample_count(self) -> int:
        return int(self.b.shape[1])


@dataclass(frozen=True)
class GramMatrix:
    """D_ij = (r/m) b_i . b_j over sample columns"""
    D: np.ndarray

    @property
    def dmax(self) -> float:
        return float(self.D.max())


@dataclass
class AlphaState:
    alpha: np.ndarray
    residuals: np.ndarray
    total: float
    updates: int = 0


@dataclass
class UVState:
    u: np.ndarray
    v: np.ndarray
    k: int


def _design_from_values(values: np.ndarray, v: np.ndarray) -> DesignMatrix:
    v = np.asarray(v, dtype=float)
    if v.shape != (values.shape[0],):
        raise ValueError(f"v has {v.size} entries for {values.shape[0]} windows")
    b = v[:, None] * values
    empty = np.flatnonzero(~(b > 0).any(axis=0))
    if empty.size:
        raise DesignMatrixError(
            f"{empty.size} sample(s) lost all window mass (first at column {int(empty[0])})"
        )
    return DesignMatrix(b)


def build_design(basis: WindowBasis, v, samples) -> DesignMatrix:
    """b_ij = v_i phi_i(x_j); a column without a positive entry is an error."""
    x = np.asarray(getattr(samples, "values", samples), dtype=float)
    return _design_from_values(basis.evaluate(x), v)


def build_gram(design: DesignMatrix, r: float, m: int) -> GramMatrix:
    b = design.b
    D = (r / m) * (b.T @ b)
    # exact symmetry regardless of BLAS summation order
    D = np.triu(D) + np.triu(D, 1).T
    return GramMatrix(D)


def compute_residual(gram: GramMatrix, alpha) -> Tuple[np.ndarray, float]:
    """E_i = |sum_j D_ij alpha_i alpha_j - 1| and their sum E."""
    alpha = np.asarray(alpha, dtype=float)
    residuals = np.abs(alpha * (gram.D @ alpha) - 1.0)
    return residuals, float(residuals.sum())


def update_coordinate(d_kk: float, s: float) -> float:
    """
    Positive root of d_kk a^2 + s a - 1 = 0, i.e. (-s + sqrt(s^2 + 4 d_kk)) / (2 d_kk),
    written as 2 / (s + sqrt(s^2 + 4 d_kk)) to avoid cancellation for s >= 0.
    """
    return 2.0 / (s + math.sqrt(s * s + 4.0 * d_kk))


def inner_solve(gram: GramMatrix, config: SolverConfig,
                alpha0: Optional[np.ndarray] = None) -> AlphaState:
    """
    Solve alpha_k (D alpha)_k = 1 for all k by greedy coordinate updates.

    Starts from alpha0 when given, else from alpha_k = sqrt(1 / (Dmax m)).
    Raises ConvergenceError once max_inner_updates is spent with E > delta.
    """
    D = gram.D
    m = D.shape[0]
    diag = np.diag(D).copy()
    if np.any(diag <= 0):
        raise DesignMatrixError("Gram matrix has a zero diagonal entry; some sample is uncovered")

    delta = config.resolved_delta(m)
    if alpha0 is not None and np.shape(alpha0) == (m,) and np.all(np.asarray(alpha0) > 0):
        alpha = np.array(alpha0, dtype=float)
    else:
        alpha = np.full(m, math.sqrt(1.0 / (gram.dmax * m)))

    g = D @ alpha
    residuals = np.abs(alpha * g - 1.0)
    total = float(residuals.sum())
    updates = 0

    while total > delta:
        if updates >= config.max_inner_updates:
            raise ConvergenceError(
                f"inner solver stopped after {updates} updates with E = {total:.3e} > {delta:.3e}",
                residual=total,
            )
        k = int(np.argmax(residuals))
        s = float(D[k] @ alpha) - diag[k] * alpha[k]
        new = update_coordinate(diag[k], s)
        g += D[k] * (new - alpha[k])
        alpha[k] = new
        g[k] = s + diag[k] * new
        updates += 1
        if updates % _REFRESH_EVERY == 0:
            g = D @ alpha
        residuals = np.abs(alpha * g - 1.0)
        total = float(residuals.sum())

    return AlphaState(alpha=alpha, residuals=residuals, total=total, updates=updates)


def recover_u(state: AlphaState, design: DesignMatrix, r: float, m: int) -> np.ndarray:
    """u = (r/m) sum_j alpha_j b_j"""
    return (r / m) * (design.b @ state.alpha)


def rescale_v(u, v, r: float) -> np.ndarray:
    """v' = theta sqrt(u v) with theta = sqrt(r / sum u v), so sum v'^2 = r."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    uv = float(u @ v)
    if uv <= 0:
        raise DesignMatrixError("sum of u*v vanished; the windows lost all sample mass")
    return math.sqrt(r / uv) * np.sqrt(u * v)


def _log_likelihood(values: np.ndarray, c: np.ndarray) -> float:
    with np.errstate(divide="ignore"):
        return float(np.log(c @ values).sum())


def outer_residual(u, v, r: float) -> float:
    """Distance |v' - v| moved by one rescale; zero exactly at a fixed point u = v."""
    v = np.asarray(v, dtype=float)
    return float(np.linalg.norm(rescale_v(u, v, r) - v))


def _log_steps(v0, v1, v2) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    v0, v1, v2 = (np.asarray(v, dtype=float) for v in (v0, v1, v2))
    positive = (v0 > 0) & (v1 > 0) & (v2 > 0)
    w0, w1, w2 = np.log(v0[positive]), np.log(v1[positive]), np.log(v2[positive])
    first = w1 - w0
    second = (w2 - w1) - first
    return positive, w0, first, second


def extrapolation_step(v0, v1, v2) -> float:
    """
    Squared-extrapolation steplength -|w1 - w0| / |w2 - 2 w1 + w0| for
    w = log v over three successive outer iterates.

    Differences are centered first: a common shift of log v is undone by
    the rescale and carries no information. -1 means "no extrapolation".
    """
    positive, _, first, second = _log_steps(v0, v1, v2)
    if not positive.any():
        return -1.0
    first = first - first.mean()
    second = second - second.mean()
    r_norm, q_norm = float(np.linalg.norm(first)), float(np.linalg.norm(second))
    if r_norm == 0.0:
        return -1.0
    if q_norm == 0.0:
        return -math.inf
    return -r_norm / q_norm


def extrapolate(v0, v1, v2, step: float, r: float) -> np.ndarray:
    """
    v at log v = w0 - 2 step (w1 - w0) + step^2 (w2 - 2 w1 + w0), rescaled so
    sum v^2 = r. step = -1 returns v2. Windows with a zero weight in any
    iterate keep weight zero.
    """
    positive, w0, first, second = _log_steps(v0, v1, v2)
    w = w0 - 2.0 * step * first + step * step * second
    w = np.maximum(w - w.max(), _LOG_FLOOR)
    v = np.zeros(positive.size)
    v[positive] = np.exp(w)
    return math.sqrt(r / float(v @ v)) * v


class _OuterLoop:
    """Outer iterations of one fit: inner solves, traces and the stopping rule"""

    def __init__(self, values: np.ndarray, config: SolverConfig):
        self.values = values
        self.config = config
        self.m = values.shape[1]
        self.report = FitReport()
        self.alpha: Optional[np.ndarray] = None
        self.state = UVState(u=np.zeros(values.shape[0]), v=np.zeros(values.shape[0]), k=0)

    @property
    def done(self) -> bool:
        return self.report.terminated_by is not None

    def evaluate(self, v: np.ndarray) -> np.ndarray:
        """One outer iteration at v; returns u and applies the epsilon test."""
        r, eps = self.config.r, self.config.eps_outer
        k = self.report.outer_iterations + 1
        design = _design_from_values(self.values, v)
        gram = build_gram(design, r, self.m)
        try:
            inner = inner_solve(gram, self.config, alpha0=self.alpha)
        except ConvergenceError as e:
            self.report.outer_iterations = k
            self.report.final_inner_residual = e.residual
            raise ConvergenceError(f"outer iteration {k}: {e}", residual=e.residual, report=self.report) from e

        self.alpha = inner.alpha
        u = recover_u(inner, design, r, self.m)
        uv_sum = float(u @ v)
        loglik = _log_likelihood(self.values, u * v)
        self.state = UVState(u=u, v=np.asarray(v, dtype=float), k=k)

        report = self.report
        report.outer_iterations = k
        report.inner_updates_total += inner.updates
        report.final_inner_residual = inner.total
        report.final_uv_sum = uv_sum
        report.uv_trace.append(uv_sum)
        report.residual_trace.append(inner.total)
        report.inner_updates_trace.append(inner.updates)
        report.loglik_trace.append(loglik)
        logger.debug(f"Outer {k}: sum uv = {uv_sum:.12f}, E = {inner.total:.3e}, "
                     f"{inner.updates} updates, loglik = {loglik:.6f}")

        if uv_sum + eps >= r:
            report.terminated_by = TerminationReason.EPSILON_TEST
        else:
            self.check_budget()
        return u

    def check_budget(self):
        if not self.done and self.report.outer_iterations >= self.config.max_outer:
            self.report.terminated_by = TerminationReason.BUDGET
            logger.warning(f"Outer loop hit max_outer = {self.report.outer_iterations} with "
                           f"sum uv = {self.report.final_uv_sum:.12f} < r - eps")


def _alternate(loop: _OuterLoop, u: np.ndarray, v: np.ndarray):
    r = loop.config.r
    while not loop.done:
        v = rescale_v(u, v, r)
        u = loop.evaluate(v)


def _alternate_extrapolated(loop: _OuterLoop, u0: np.ndarray, v0: np.ndarray):
    """
    Two plain alternations from v0, then one squared-extrapolation jump in
    log v. The jump is kept only if it moves less under a further rescale
    than v0 did; otherwise the cycle continues from the second plain iterate.
    """
    r = loop.config.r
    report = loop.report
    step_max = _STEP_GROWTH
    while not loop.done:
        v1 = rescale_v(u0, v0, r)
        u1 = loop.evaluate(v1)
        if loop.done:
            return
        v2 = rescale_v(u1, v1, r)
        u2 = loop.evaluate(v2)
        if loop.done:
            return

        raw = extrapolation_step(v0, v1, v2)
        step = min(-1.0, max(-step_max, raw))
        if raw < -step_max:
            step_max *= _STEP_GROWTH
        if step == -1.0:
            u0, v0 = u2, v2
            continue

        v3 = extrapolate(v0, v1, v2, step, r)
        try:
            u3 = loop.evaluate(v3)
        except (ConvergenceError, DesignMatrixError) as e:
            logger.debug(f"Extrapolated iterate with step {step:.3g} failed: {e}")
            # the failed jump leaves no trace entry and no iteration behind
            report.outer_iterations = len(report.uv_trace)
            report.final_inner_residual = report.residual_trace[-1]
            accepted = False
        else:
            if loop.done:
                report.extrapolations_accepted += int(report.converged)
                return
            accepted = outer_residual(u3, v3, r) <= outer_residual(u0, v0, r)

        if accepted:
            report.extrapolations_accepted += 1
            u0, v0 = u3, v3
        else:
            report.extrapolations_rejected += 1
            step_max = max(_STEP_GROWTH, step_max / _STEP_GROWTH)
            u0, v0 = u2, v2


def outer_fit(basis: WindowBasis, samples, config: Optional[SolverConfig] = None) -> Tuple[np.ndarray, FitReport]:
    """
    Maximize the likelihood of sum u_i v_i phi_i over the samples.

    Returns the coefficients c = u v at termination and the FitReport.
    Termination is by sum u v + eps >= r or, with a warning, by max_outer.
    With ``accelerate_outer`` the v-sequence is extrapolated; the fixed
    point and the stopping rule are those of the plain alternation.
    """
    config = config or SolverConfig()
    x = np.asarray(getattr(samples, "values", samples), dtype=float)
    values = basis.evaluate(x)
    uncovered = np.flatnonzero(~(values > 0).any(axis=0))
    if uncovered.size:
        raise CoverageError(f"{uncovered.size} sample(s) are not covered by any window", uncovered.tolist())

    n, m = values.shape
    r, eps = config.r, config.eps_outer
    loop = _OuterLoop(values, config)
    v = np.full(n, math.sqrt(r / n))
    u = loop.evaluate(v)
    if config.accelerate_outer:
        _alternate_extrapolated(loop, u, v)
    else:
        _alternate(loop, u, v)

    report, state = loop.report, loop.state
    report.final_u_norm = float(state.u @ state.u)
    report.uv_distance = float(((state.u - state.v) ** 2).sum())
    # sum v^2 = r exactly and |sum u^2 - r| <= r E / m at inner exit
    report.uv_distance_bound = 2 * eps + r * report.final_inner_residual / m
    if report.converged and report.uv_distance > report.uv_distance_bound:
        logger.warning(f"sum (u - v)^2 = {report.uv_distance:.3e} exceeds {report.uv_distance_bound:.3e} at exit")

    return state.u * state.v, report
