"""
Seeded sample generation for the three example distributions

Uniforms come from NumPy's PCG-64 bit generator, which is a documented
algorithm with bit-identical output on every platform, so (m, seed) fully
determines a sample set. Every generator is an inverse-CDF transform of
those uniforms.
"""
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Union

import numpy as np

from ..config.logger import logger
from ..exceptions import SampleDataError


class SampleSource(str, Enum):
    """Where a sample set came from"""
    EXPONENTIAL = "exponential"
    BIMODAL = "bimodal"
    TRIMODAL = "trimodal"
    FILE = "file"


@dataclass(frozen=True)
class SampleSet:
    """Sorted observations with their generation provenance"""
    values: np.ndarray
    seed: int = 0
    source: SampleSource = SampleSource.FILE

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        if values.size < 1:
            raise SampleDataError("a sample set needs at least one value")
        if not np.all(np.isfinite(values)):
            raise SampleDataError("samples must be finite numbers")
        if np.any(np.diff(values) < 0):
            raise SampleDataError("samples must be sorted in non-decreasing order")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_values(cls, values: Iterable[float], seed: int = 0,
                    source: SampleSource = SampleSource.FILE) -> "SampleSet":
        """Sort arbitrary observations into a sample set."""
        return cls(np.sort(np.asarray(list(values), dtype=float)), seed, source)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "SampleSet":
        """Read one decimal per line; blank lines and '#' comments are skipped."""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise SampleDataError(f"cannot read sample file {path}: {e}") from e

        values = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(float(line))
            except ValueError as e:
                raise SampleDataError(f"{path}:{lineno}: not a number: {line!r}") from e

        logger.debug(f"Read {len(values)} samples from {path}")
        return cls.from_values(values)

    def write(self, path: Union[str, Path]):
        """Write one shortest round-trip decimal per line."""
        lines = "".join(f"{float(x)!r}\n" for x in self.values)
        Path(path).write_text(lines, encoding="utf-8")

    @property
    def size(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.size


def uniforms(m: int, seed: int) -> np.ndarray:
    """m uniforms on [0, 1) from PCG-64 seeded with ``seed``."""
    if m < 1:
        raise ValueError(f"sample size must be at least 1, got {m}")
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    return np.random.Generator(np.random.PCG64(seed)).random(m)


def exponential_inverse_cdf(u):
    """x = -ln(1 - u) for the unit exponential"""
    u = np.asarray(u, dtype=float)
    return -np.log1p(-u)


def bimodal_inverse_cdf(u):
    """Mass 2/3 uniform on [1, 2], mass 1/3 uniform on [3, 4]"""
    u = np.asarray(u, dtype=float)
    return np.where(u < 2.0 / 3.0, 1.0 + 1.5 * u, 3.0 + 3.0 * (u - 2.0 / 3.0))


def trimodal_inverse_cdf(u):
    """Mass 1/2 on [0, 1/2], 1/4 on [1, 3/2], 1/4 on [3, 7/2]"""
    u = np.asarray(u, dtype=float)
    return np.select(
        [u < 0.5, u < 0.75],
        [u, 1.0 + 2.0 * (u - 0.5)],
        default=3.0 + 2.0 * (u - 0.75),
    )


_INVERSE_CDFS = {
    SampleSource.EXPONENTIAL: exponential_inverse_cdf,
    SampleSource.BIMODAL: bimodal_inverse_cdf,
    SampleSource.TRIMODAL: trimodal_inverse_cdf,
}


def inverse_cdf(source: SampleSource, u):
    """Deterministic uniform -> sample transform for a generated source."""
    try:
        transform = _INVERSE_CDFS[SampleSource(source)]
    except KeyError:
        raise SampleDataError(f"source {source!r} has no generator") from None
    return transform(u)


def generate(source: SampleSource, m: int, seed: int) -> SampleSet:
    """Draw m sorted samples from one of the example distributions."""
    source = SampleSource(source)
    values = np.sort(inverse_cdf(source, uniforms(m, seed)))
    logger.debug(f"Generated {m} {source.value} samples with seed {seed}")
    return SampleSet(values, seed=seed, source=source)


def gen_exponential(m: int, seed: int) -> SampleSet:
    return generate(SampleSource.EXPONENTIAL, m, seed)


def gen_bimodal(m: int, seed: int) -> SampleSet:
    return generate(SampleSource.BIMODAL, m, seed)


def gen_trimodal(m: int, seed: int) -> SampleSet:
    return generate(SampleSource.TRIMODAL, m, seed)


def _exponential_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.where(x >= 0, np.exp(-np.maximum(x, 0.0)), 0.0)


def _bimodal_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.select(
        [(x >= 1) & (x <= 2), (x >= 3) & (x <= 4)],
        [2.0 / 3.0, 1.0 / 3.0],
        default=0.0,
    )


def _trimodal_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.select(
        [(x >= 0) & (x <= 0.5), (x >= 1) & (x <= 1.5), (x >= 3) & (x <= 3.5)],
        [1.0, 0.5, 0.5],
        default=0.0,
    )


_TRUE_PDFS = {
    SampleSource.EXPONENTIAL: _exponential_pdf,
    SampleSource.BIMODAL: _bimodal_pdf,
    SampleSource.TRIMODAL: _trimodal_pdf,
}

# Where each true density is positive, as (lo, hi) intervals
SUPPORTS = {
    SampleSource.EXPONENTIAL: ((0.0, np.inf),),
    SampleSource.BIMODAL: ((1.0, 2.0), (3.0, 4.0)),
    SampleSource.TRIMODAL: ((0.0, 0.5), (1.0, 1.5), (3.0, 3.5)),
}


def true_pdf(source: SampleSource) -> Callable:
    """Exact density of a generated source; vectorized over numpy arrays."""
    source = SampleSource(source)
    if source is SampleSource.FILE:
        raise SampleDataError("samples read from a file have no true density")
    return _TRUE_PDFS[source]
