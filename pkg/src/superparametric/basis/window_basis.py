"""
Window function families

Bezier (Bernstein) windows on a scaled interval, B-spline windows whose knots
are the sorted observations, and piecewise Bezier bases made of several
disjoint Bezier pieces. Every window is stored with its raw area and the
normalizer 1/area, so the normalized windows each integrate to one.
"""
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config.logger import logger
from ..exceptions import DegenerateBasisError, SampleDataError


class BasisFamily(str, Enum):
    """Window family of a basis or of one of its pieces"""
    BEZIER = "bezier"
    BSPLINE = "bspline"
    PIECEWISE_BEZIER = "pbezier"


@dataclass(frozen=True)
class Domain:
    """Closed interval [lo, hi] in data units"""
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ValueError(f"domain bounds must be finite, got [{lo}, {hi}]")
        if not lo < hi:
            raise ValueError(f"degenerate domain [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (x >= self.lo) & (x <= self.hi)


def extend_domain(lo: float, hi: float, fraction: float) -> Domain:
    """Widen [lo, hi] by ``fraction`` of its width on both sides."""
    pad = fraction * (hi - lo)
    return Domain(lo - pad, hi + pad)


@dataclass(frozen=True)
class KnotVector:
    """Non-decreasing knots t_0..t_{n+k} for n+1 B-splines of order k"""
    knots: np.ndarray
    order: int

    def __post_init__(self):
        knots = np.array(self.knots, dtype=float).ravel()
        if self.order < 1:
            raise ValueError(f"B-spline order must be at least 1, got {self.order}")
        if knots.size < self.order + 1:
            raise ValueError(f"{knots.size} knots cannot carry a B-spline of order {self.order}")
        if np.any(np.diff(knots) < 0):
            raise ValueError("knots must be non-decreasing")
        knots.setflags(write=False)
        object.__setattr__(self, "knots", knots)

    @property
    def basis_count(self) -> int:
        return int(self.knots.size - self.order)


# ---------------------------------------------------------------------------
# Bezier / Bernstein
# ---------------------------------------------------------------------------

def binomial(n: int, i: int) -> float:
    """C(n, i) by multiplicative recurrence; no factorials are formed."""
    i = min(i, n - i)
    c = 1.0
    for j in range(1, i + 1):
        c = c * (n - i + j) / j
    return c


def bezier_eval(i: int, n: int, t: float) -> float:
    """Raw Bernstein polynomial B_{i,n}(t) = C(n,i) t^i (1-t)^(n-i) on [0, 1]."""
    if n < 0 or not 0 <= i <= n:
        raise ValueError(f"Bernstein index {i} out of range for degree {n}")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"Bernstein parameter {t} outside [0, 1]")
    return binomial(n, i) * t ** i * (1.0 - t) ** (n - i)


def bernstein_matrix(n: int, t) -> np.ndarray:
    """All raw Bernstein polynomials of degree n at t; shape (n+1, len(t))."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    i = np.arange(n + 1)
    coefficients = np.array([binomial(n, int(j)) for j in i])
    return coefficients[:, None] * t[None, :] ** i[:, None] * (1.0 - t[None, :]) ** (n - i)[:, None]


# ---------------------------------------------------------------------------
# B-splines
# ---------------------------------------------------------------------------

def make_bspline_knots(sorted_samples: Sequence[float], order: int) -> KnotVector:
    """
    Knots from m+1 sorted observations with n = m:

        t_i = x_0            for i < k
        t_i = x_{i-k+1}      for k <= i <= n
        t_i = x_{n-k+2}      for i > n

    For k = 1 the last rule would index past x_m and is clamped to x_m.
    """
    x = np.asarray(sorted_samples, dtype=float).ravel()
    if order < 1:
        raise ValueError(f"B-spline order must be at least 1, got {order}")
    if np.any(np.diff(x) < 0):
        raise SampleDataError("knot sources must be sorted in non-decreasing order")
    m = x.size - 1
    if m < order:
        raise SampleDataError(f"{x.size} samples are too few for B-splines of order {order}")

    n, k = m, order
    source = [0 if i < k else (i - k + 1 if i <= n else min(n - k + 2, m)) for i in range(n + k + 1)]
    return KnotVector(x[source], k)


def _as_knot_vector(knots: Union[KnotVector, Sequence[float]], order: int) -> KnotVector:
    if isinstance(knots, KnotVector):
        if knots.order != order:
            raise ValueError(f"knot vector has order {knots.order}, expected {order}")
        return knots
    return KnotVector(np.asarray(knots, dtype=float), order)


def _safe_divide(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    """numerator / denominator with every zero-denominator term set to 0."""
    denominator = np.broadcast_to(denominator, numerator.shape)
    return np.divide(numerator, denominator, out=np.zeros_like(numerator), where=denominator > 0)


def bspline_basis_matrix(knots: KnotVector, x) -> np.ndarray:
    """
    Cox-de Boor recursion for every N_{i,k} at once; shape (n+1, len(x)).

    N_{i,1} are half-open indicators [t_i, t_{i+1}) except that the last
    non-empty interval is closed on the right, so x = t_{n+k} is covered.
    """
    t = knots.knots
    x = np.atleast_1d(np.asarray(x, dtype=float))

    values = ((t[:-1, None] <= x[None, :]) & (x[None, :] < t[1:, None])).astype(float)
    nonempty = np.flatnonzero(t[:-1] < t[1:])
    if nonempty.size:
        values[nonempty[-1], x == t[-1]] = 1.0

    size = t.size
    for p in range(2, knots.order + 1):
        count = size - p
        t_i = t[:count, None]
        t_ip1 = t[p - 1:p - 1 + count, None]
        t_i1 = t[1:1 + count, None]
        t_ip = t[p:p + count, None]
        left = _safe_divide((x[None, :] - t_i) * values[:-1], t_ip1 - t_i)
        right = _safe_divide((t_ip - x[None, :]) * values[1:], t_ip - t_i1)
        values = left + right
    return values


def bspline_eval(i: int, order: int, knots: Union[KnotVector, Sequence[float]], x: float) -> float:
    """Single B-spline N_{i,k}(x); zero outside [t_0, t_{n+k}]."""
    kv = _as_knot_vector(knots, order)
    if not 0 <= i < kv.basis_count:
        raise ValueError(f"B-spline index {i} out of range for {kv.basis_count} windows")
    if x < kv.knots[0] or x > kv.knots[-1]:
        return 0.0
    return float(bspline_basis_matrix(kv, [x])[i, 0])


def bspline_area(i: int, order: int, knots: Union[KnotVector, Sequence[float]]) -> float:
    """Integral of N_{i,k}: (t_{i+k} - t_i) / k."""
    kv = _as_knot_vector(knots, order)
    if not 0 <= i < kv.basis_count:
        raise ValueError(f"B-spline index {i} out of range for {kv.basis_count} windows")
    return float((kv.knots[i + order] - kv.knots[i]) / order)


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisPiece:
    """
    Windows of one family on one domain.

    ``windows`` lists the raw window indices that survived the area floor;
    ``areas`` and ``normalizers`` are aligned with it.
    """
    kind: BasisFamily
    domain: Domain
    degree: int
    windows: np.ndarray
    areas: np.ndarray
    normalizers: np.ndarray
    knots: Optional[KnotVector] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", BasisFamily(self.kind))
        object.__setattr__(self, "degree", int(self.degree))
        for name in ("windows", "areas", "normalizers"):
            array = np.array(getattr(self, name), dtype=int if name == "windows" else float).ravel()
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        if not (self.windows.size == self.areas.size == self.normalizers.size):
            raise ValueError("windows, areas and normalizers must have equal length")
        if self.kind is BasisFamily.BSPLINE and self.knots is None:
            raise ValueError("a B-spline piece needs a knot vector")

    @property
    def window_count(self) -> int:
        return int(self.windows.size)

    def raw_values(self, x) -> np.ndarray:
        """Unnormalized retained windows at x, zero off the piece domain."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        inside = self.domain.contains(x)
        if self.kind is BasisFamily.BEZIER:
            t = np.clip((x - self.domain.lo) / self.domain.width, 0.0, 1.0)
            raw = bernstein_matrix(self.degree, t)
        else:
            raw = bspline_basis_matrix(self.knots, x)
        return raw[self.windows] * inside[None, :]

    def values(self, x) -> np.ndarray:
        return self.normalizers[:, None] * self.raw_values(x)


@dataclass(frozen=True)
class WindowBasis:
    """Normalized nonnegative windows phi_i over one or more disjoint pieces"""
    family: BasisFamily
    pieces: Tuple[BasisPiece, ...]

    def __post_init__(self):
        pieces = tuple(self.pieces)
        if not pieces:
            raise DegenerateBasisError("a basis needs at least one piece")
        object.__setattr__(self, "pieces", pieces)

    @property
    def window_count(self) -> int:
        return sum(piece.window_count for piece in self.pieces)

    @property
    def areas(self) -> np.ndarray:
        return np.concatenate([piece.areas for piece in self.pieces])

    @property
    def normalizers(self) -> np.ndarray:
        return np.concatenate([piece.normalizers for piece in self.pieces])

    @property
    def domain(self) -> Domain:
        """Hull of all piece domains"""
        return Domain(min(p.domain.lo for p in self.pieces), max(p.domain.hi for p in self.pieces))

    def piece_slices(self) -> List[slice]:
        """Positions of each piece's windows inside the concatenated basis."""
        slices, start = [], 0
        for piece in self.pieces:
            slices.append(slice(start, start + piece.window_count))
            start += piece.window_count
        return slices

    def evaluate(self, x) -> np.ndarray:
        """All normalized windows at x; shape (window_count, len(x))."""
        return np.vstack([piece.values(x) for piece in self.pieces])


def basis_matrix(basis: WindowBasis, x) -> np.ndarray:
    return basis.evaluate(x)


def bezier_piece(domain: Domain, degree: int) -> BasisPiece:
    """Degree-n Bezier windows on ``domain``; each raw area is width/(n+1)."""
    if degree < 1:
        raise ValueError(f"Bezier degree must be at least 1, got {degree}")
    count = degree + 1
    return BasisPiece(
        kind=BasisFamily.BEZIER,
        domain=domain,
        degree=degree,
        windows=np.arange(count),
        areas=np.full(count, domain.width / count),
        normalizers=np.full(count, count / domain.width),
    )


def make_bezier_basis(domain: Domain, degree: int) -> WindowBasis:
    """
    Bezier basis: phi_i(x) = ((n+1)/(hi-lo)) C(n,i) t^i (1-t)^(n-i)
    with t = (x - lo)/(hi - lo).
    """
    return WindowBasis(BasisFamily.BEZIER, (bezier_piece(domain, degree),))


def make_piecewise_bezier_basis(domains: Sequence[Domain], degree: int) -> WindowBasis:
    """One Bezier piece per domain, concatenated into a single basis."""
    ordered = sorted(domains, key=lambda d: d.lo)
    for left, right in zip(ordered, ordered[1:]):
        if right.lo <= left.hi:
            raise ValueError(f"pieces [{left.lo}, {left.hi}] and [{right.lo}, {right.hi}] overlap")
    return WindowBasis(BasisFamily.PIECEWISE_BEZIER, tuple(bezier_piece(d, degree) for d in ordered))


def make_bspline_basis(sorted_samples: Sequence[float], order: int,
                       extension_fraction: float = 0.05, area_floor: float = 1e-12) -> WindowBasis:
    """
    B-spline basis whose knots are the observations.

    The working interval is the sample range widened by ``extension_fraction``
    of its width on each side; the k repeated boundary knots at either end
    sit on the widened endpoints. Windows with area at most
    ``area_floor * width`` are dropped and the survivors normalized by 1/area.
    """
    x = np.asarray(sorted_samples, dtype=float).ravel()
    kv = make_bspline_knots(x, order)
    if x[-1] <= x[0]:
        raise DegenerateBasisError("degenerate basis: all samples are equal")

    domain = extend_domain(x[0], x[-1], extension_fraction)
    n = kv.basis_count - 1
    knots = kv.knots.copy()
    knots[:order] = domain.lo
    knots[n + 1:] = domain.hi
    kv = KnotVector(knots, order)

    areas = (knots[order:] - knots[:-order]) / order
    keep = np.flatnonzero(areas > area_floor * domain.width)
    if keep.size == 0:
        raise DegenerateBasisError("degenerate basis: every window has zero area")
    if keep.size < areas.size:
        logger.debug(f"Dropped {areas.size - keep.size} B-spline windows below the area floor")

    piece = BasisPiece(
        kind=BasisFamily.BSPLINE,
        domain=domain,
        degree=order,
        windows=keep,
        areas=areas[keep],
        normalizers=1.0 / areas[keep],
        knots=kv,
    )
    return WindowBasis(BasisFamily.BSPLINE, (piece,))


def coverage_check(basis: WindowBasis, samples) -> List[int]:
    """Indices of samples at which every window vanishes; empty means covered."""
    values = np.asarray(getattr(samples, "values", samples), dtype=float)
    covered = (basis.evaluate(values) > 0).any(axis=0)
    return [int(j) for j in np.flatnonzero(~covered)]
