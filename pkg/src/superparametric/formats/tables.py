"""
Tab-separated tables: partition pieces, plot grids and bench rows
"""
import sys
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np
import pandas as pd

from ..estimator.density import DensityEstimate
from ..partition.domain_partition import DomainPartition

DEFAULT_GRID_ROWS = 512


def partition_table(result: DomainPartition) -> pd.DataFrame:
    """One row per piece: piece_index, lo, hi, sample_count"""
    return pd.DataFrame(
        {
            "piece_index": range(result.piece_count),
            "lo": [p.lo for p in result.pieces],
            "hi": [p.hi for p in result.pieces],
            "sample_count": [p.sample_count for p in result.pieces],
        }
    )


def plot_grid(est: DensityEstimate, rows: int = DEFAULT_GRID_ROWS,
              truth: Optional[Callable] = None, include_cdf: bool = False) -> pd.DataFrame:
    """
    Evenly spaced grid over the fit domain with the fitted density and,
    when ``truth`` is given, the exact density. The truth column is blank
    otherwise.
    """
    if rows < 2:
        raise ValueError(f"a plot grid needs at least 2 rows, got {rows}")
    x = np.linspace(est.domain.lo, est.domain.hi, rows)
    table = pd.DataFrame(
        {
            "x": x,
            "density": est.pdf(x),
            "truth": np.asarray(truth(x), dtype=float) if truth is not None else np.full(rows, np.nan),
        }
    )
    if include_cdf:
        table["cdf"] = est.cdf(x)
    return table


def write_tsv(table: pd.DataFrame, out: Union[str, Path, None] = None):
    """Write a table as TSV to ``out``, or to stdout for None / '-'."""
    if out is None or str(out) == "-":
        table.to_csv(sys.stdout, sep="\t", index=False, na_rep="")
    else:
        table.to_csv(out, sep="\t", index=False, na_rep="")


def read_tsv(path: Union[str, Path]) -> pd.DataFrame:
    return pd.read_csv(path, sep="\t", float_precision="round_trip")
