"""
Domain partitioning by searching for tails in the middle

The sorted samples are cut at their largest spacings. A candidate gap is
accepted only if both sides keep enough samples of the segment it lies in
(and, unless disabled, the gap dominates the typical spacing of that
segment). Accepted gaps are marked -1, rejected ones 0, so no gap is ever
examined twice.
"""
import bisect
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..basis.window_basis import Domain
from ..config.logger import logger
from ..config.settings import SolverConfig
from ..exceptions import DegenerateBasisError, SampleDataError

ACCEPTED = -1.0
REJECTED = 0.0


@dataclass
class GapArray:
    """Spacings t(i) = x(i+1) - x(i) plus the marks made by the partitioner"""
    t: np.ndarray
    marked: np.ndarray = field(default=None)

    def __post_init__(self):
        self.t = np.array(self.t, dtype=float)
        if self.marked is None:
            self.marked = np.zeros(self.t.size, dtype=bool)

    def mark(self, i: int, accepted: bool):
        self.t[i] = ACCEPTED if accepted else REJECTED
        self.marked[i] = True

    def largest_unmarked(self) -> Optional[int]:
        """Index of the largest unmarked gap, smallest index on ties."""
        if self.marked.all():
            return None
        return int(np.argmax(np.where(self.marked, -np.inf, self.t)))


@dataclass(frozen=True)
class PartitionPiece:
    """Samples first..last (inclusive) of the sorted set"""
    lo: float
    hi: float
    first: int
    last: int

    @property
    def sample_count(self) -> int:
        return self.last - self.first + 1

    @property
    def domain(self) -> Domain:
        if not self.lo < self.hi:
            raise DegenerateBasisError(f"piece at {self.lo} holds {self.sample_count} identical samples")
        return Domain(self.lo, self.hi)


@dataclass(frozen=True)
class DomainPartition:
    """Ordered disjoint pieces and the gaps removed between them"""
    pieces: Tuple[PartitionPiece, ...]
    cut_indices: Tuple[int, ...]
    removed_gaps: Tuple[Tuple[float, float], ...]

    @property
    def piece_count(self) -> int:
        return len(self.pieces)

    def domains(self) -> List[Domain]:
        return [piece.domain for piece in self.pieces]


def gaps(samples) -> GapArray:
    """t(i) = x(i+1) - x(i) over sorted samples."""
    x = np.asarray(getattr(samples, "values", samples), dtype=float)
    if x.size < 2:
        raise SampleDataError("gaps need at least 2 samples")
    t = np.diff(x)
    if np.any(t < 0):
        raise SampleDataError("samples must be sorted before computing gaps")
    return GapArray(t)


def _segments(cuts: List[int], count: int) -> List[Tuple[int, int]]:
    ordered = sorted(cuts)
    starts = [0] + [c + 1 for c in ordered]
    ends = ordered + [count - 1]
    return list(zip(starts, ends))


def _pieces(x: np.ndarray, cuts: List[int]) -> Tuple[PartitionPiece, ...]:
    return tuple(PartitionPiece(float(x[s]), float(x[e]), s, e) for s, e in _segments(cuts, x.size))


def partition(samples, config: Optional[SolverConfig] = None) -> DomainPartition:
    """
    Split the sample range at large interior gaps.

    Each round takes the largest unmarked gap t(i0). The cut is accepted if
    both sides of the segment containing i0 keep at least min_piece_size
    samples and t(i0) >= min_gap_ratio * median gap of that segment.
    Stops when every gap is marked, only zero gaps remain, or no segment is
    large enough to be cut again.
    """
    config = config or SolverConfig()
    x = np.asarray(getattr(samples, "values", samples), dtype=float)
    if x.size < 2:
        return DomainPartition(_pieces(x, []), (), ())

    gap_array = gaps(x)
    raw = gap_array.t.copy()
    min_size = config.resolved_min_piece_size(x.size)
    cuts: List[int] = []

    while True:
        segments = _segments(cuts, x.size)
        if all(e - s + 1 < 2 * min_size for s, e in segments):
            break

        i0 = gap_array.largest_unmarked()
        if i0 is None or gap_array.t[i0] <= 0:
            break

        s, e = segments[bisect.bisect_left(sorted(cuts), i0)]
        left, right = i0 - s + 1, e - i0
        accepted = left >= min_size and right >= min_size
        if accepted and config.min_gap_ratio > 0:
            typical = float(np.median(raw[s:e]))
            accepted = typical == 0 or raw[i0] >= config.min_gap_ratio * typical

        gap_array.mark(i0, accepted)
        if accepted:
            cuts.append(i0)
            logger.debug(f"Cut at gap {i0}: ({x[i0]}, {x[i0 + 1]}) splits {left}+{right} samples")

    removed = tuple((float(x[c]), float(x[c + 1])) for c in sorted(cuts))
    result = DomainPartition(_pieces(x, cuts), tuple(cuts), removed)
    logger.info(f"Partitioned {x.size} samples into {result.piece_count} piece(s)")
    return result
