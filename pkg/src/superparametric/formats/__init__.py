"""
Model files and tabular output
"""

from .model_file import FORMAT_VERSION, dumps_model, loads_model, read_model, write_model
from .tables import DEFAULT_GRID_ROWS, partition_table, plot_grid, read_tsv, write_tsv

__all__ = [
    "DEFAULT_GRID_ROWS",
    "FORMAT_VERSION",
    "dumps_model",
    "loads_model",
    "partition_table",
    "plot_grid",
    "read_model",
    "read_tsv",
    "write_model",
    "write_tsv",
]
