"""
Fitted densities and their evaluation metrics
"""
from dataclasses import dataclass
from typing import Callable, Iterable, List, NamedTuple, Optional, Union

import numpy as np
from scipy.integrate import simpson

from ..basis.window_basis import BasisFamily, Domain, WindowBasis
from ..config.logger import logger
from ..config.settings import SolverConfig
from ..partition.domain_partition import DomainPartition
from ..solver.likelihood_solver import FitReport

DEFAULT_PANELS = 4096


def _values(samples) -> np.ndarray:
    return np.asarray(getattr(samples, "values", samples), dtype=float)


def _evaluate(f: Callable, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x), dtype=float)
    except (TypeError, ValueError):
        y = None
    if y is None or y.shape != x.shape:
        # scalar-only callables
        y = np.vectorize(f, otypes=[float])(x)
    return y


def quadrature(f: Callable, domain: Domain, panels: int = DEFAULT_PANELS) -> float:
    """Composite Simpson estimate of the integral of f over domain."""
    if panels < 2 or panels % 2:
        raise ValueError(f"Simpson's rule needs an even number of panels >= 2, got {panels}")
    x = np.linspace(domain.lo, domain.hi, panels + 1)
    return float(simpson(_evaluate(f, x), x=x))


def _split(domain: Domain, breakpoints: Iterable[float]) -> List[Domain]:
    edges = sorted({domain.lo, domain.hi, *(float(b) for b in breakpoints if domain.lo < b < domain.hi)})
    return [Domain(a, b) for a, b in zip(edges, edges[1:])]


def piecewise_quadrature(f: Callable, domain: Domain, breakpoints: Iterable[float] = (),
                         panels: int = DEFAULT_PANELS) -> float:
    """Simpson on each sub-interval between breakpoints (where f may jump)."""
    return sum(quadrature(f, part, panels) for part in _split(domain, breakpoints))


@dataclass(frozen=True)
class DensityEstimate:
    """sum_i c_i phi_i(x) over a fitted basis"""
    basis: WindowBasis
    coefficients: np.ndarray
    fit_report: FitReport
    method: BasisFamily
    config: SolverConfig
    partition: Optional[DomainPartition] = None

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float).ravel()
        if c.size != self.basis.window_count:
            raise ValueError(f"{c.size} coefficients for {self.basis.window_count} windows")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def domain(self) -> Domain:
        return self.basis.domain

    @property
    def total_mass(self) -> float:
        return float(self.coefficients.sum())

    def pdf(self, x) -> Union[float, np.ndarray]:
        """Density at x; zero off the basis domain."""
        scalar = np.ndim(x) == 0
        values = self.coefficients @ self.basis.evaluate(np.atleast_1d(np.asarray(x, dtype=float)))
        values = np.maximum(values, 0.0)
        return float(values[0]) if scalar else values

    def piece_masses(self) -> List[float]:
        """Total coefficient mass carried by each basis piece."""
        return [float(self.coefficients[s].sum()) for s in self.basis.piece_slices()]

    def breakpoints(self) -> List[float]:
        return sorted({edge for piece in self.basis.pieces for edge in (piece.domain.lo, piece.domain.hi)})

    def piece_domains(self) -> List[Domain]:
        return [piece.domain for piece in self.basis.pieces]

    def gaps(self) -> List[Domain]:
        """Open intervals between consecutive pieces, where the density is zero."""
        domains = self.piece_domains()
        return [Domain(a.hi, b.lo) for a, b in zip(domains, domains[1:]) if a.hi < b.lo]

    def covers(self, x: float) -> bool:
        return any(d.lo <= x <= d.hi for d in self.piece_domains())

    def integral(self, panels: int = DEFAULT_PANELS) -> float:
        """Quadrature of the density piece by piece."""
        return sum(quadrature(self.pdf, d, panels) for d in self.piece_domains())

    def cdf(self, x, panels: int = DEFAULT_PANELS) -> Union[float, np.ndarray]:
        """Cumulative distribution of the fitted density; flat across gaps."""
        scalar = np.ndim(x) == 0
        points = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.array([
            sum(quadrature(self.pdf, Domain(d.lo, min(p, d.hi)), panels)
                for d in self.piece_domains() if p > d.lo)
            for p in points
        ], dtype=float)
        return float(out[0]) if scalar else out


def pdf(est: DensityEstimate, x) -> Union[float, np.ndarray]:
    return est.pdf(x)


def log_likelihood(est: DensityEstimate, samples) -> float:
    """sum_j log pdf(x_j); -inf (logged) if the density vanishes at a sample."""
    with np.errstate(divide="ignore"):
        total = float(np.log(est.pdf(_values(samples))).sum())
    if total == -np.inf:
        logger.warning("Density vanishes at one or more samples; log-likelihood is -inf")
    return total


def l1_error(est, true_pdf: Callable, domain: Optional[Domain] = None,
             breakpoints: Iterable[float] = (), panels: int = 1 << 14) -> float:
    """
    Integral of |f_hat - f| over domain (default: the fit domain).

    ``est`` may be a DensityEstimate or any vectorized density. The domain is
    split at the estimate's piece edges and at ``breakpoints`` so Simpson's
    rule never straddles a jump it knows about. Off the pieces of a
    DensityEstimate (gaps included) the estimate is zero and only |f| counts.
    """
    f_hat = getattr(est, "pdf", est)
    if domain is None:
        domain = est.domain
    edges = list(breakpoints)
    piecewise = isinstance(est, DensityEstimate)
    if piecewise:
        edges += est.breakpoints()

    def error(x):
        return np.abs(_evaluate(f_hat, x) - _evaluate(true_pdf, x))

    def truth_only(x):
        return np.abs(_evaluate(true_pdf, x))

    total = 0.0
    for part in _split(domain, edges):
        inside = not piecewise or est.covers(0.5 * (part.lo + part.hi))
        total += quadrature(error if inside else truth_only, part, panels)
    return total


class KLSanity(NamedTuple):
    mean_log_f: float
    mean_log_g: float
    separation: float


def kl_sanity(f_pdf: Callable, g_pdf: Callable, sampler: Callable, m: int, seed: int = 0) -> KLSanity:
    """
    Empirical means of log f and log g over m draws from f.

    Only draws where both densities are positive count. For large m the
    separation mean_log_f - mean_log_g is positive whenever f != g; small m
    may flip its sign.
    """
    x = _values(sampler(m, seed))
    f = _evaluate(f_pdf, x)
    g = _evaluate(g_pdf, x)
    joint = (f > 0) & (g > 0)
    if not joint.any():
        raise ValueError("f and g share no positive support on the drawn samples")
    mean_log_f = float(np.log(f[joint]).mean())
    mean_log_g = float(np.log(g[joint]).mean())
    return KLSanity(mean_log_f, mean_log_g, mean_log_f - mean_log_g)
