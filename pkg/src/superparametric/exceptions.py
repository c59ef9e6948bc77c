"""
Exception hierarchy

Every error raised by the fitting pipeline derives from SuperParametricError
and carries the process exit code the CLI reports for it.
"""
from typing import Any, List, Optional


class SuperParametricError(Exception):
    """Base class for estimator failures"""

    exit_code = 2


class SampleDataError(SuperParametricError):
    """Unsorted, too few or unreadable samples"""


class DegenerateBasisError(SuperParametricError):
    """No window with positive area survives basis construction"""


class CoverageError(SuperParametricError):
    """Some samples are not covered by any window"""

    def __init__(self, message: str, uncovered: List[int]):
        super().__init__(message)
        self.uncovered = list(uncovered)


class DesignMatrixError(SuperParametricError):
    """A sample lost all window mass (zero design column or zero sum of u*v)"""


class ConvergenceError(SuperParametricError):
    """The inner coordinate solver exhausted its update budget"""

    exit_code = 3

    def __init__(self, message: str, residual: float, report: Optional[Any] = None):
        super().__init__(message)
        self.residual = residual
        self.report = report
