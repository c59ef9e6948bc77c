"""
Command-line interface and benchmark runner
"""

from .bench import BENCH_COLUMNS, run_bench, run_cell
from .commands import build_parser, main

__all__ = [
    "BENCH_COLUMNS",
    "build_parser",
    "main",
    "run_bench",
    "run_cell",
]
