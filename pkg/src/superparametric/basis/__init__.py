"""
Window function bases (Bezier, B-spline, piecewise Bezier)
"""

from .window_basis import (
    BasisFamily,
    BasisPiece,
    Domain,
    KnotVector,
    WindowBasis,
    basis_matrix,
    bernstein_matrix,
    bezier_eval,
    bezier_piece,
    binomial,
    bspline_area,
    bspline_basis_matrix,
    bspline_eval,
    coverage_check,
    extend_domain,
    make_bezier_basis,
    make_bspline_basis,
    make_bspline_knots,
    make_piecewise_bezier_basis,
)

__all__ = [
    "BasisFamily",
    "BasisPiece",
    "Domain",
    "KnotVector",
    "WindowBasis",
    "basis_matrix",
    "bernstein_matrix",
    "bezier_eval",
    "bezier_piece",
    "binomial",
    "bspline_area",
    "bspline_basis_matrix",
    "bspline_eval",
    "coverage_check",
    "extend_domain",
    "make_bezier_basis",
    "make_bspline_basis",
    "make_bspline_knots",
    "make_piecewise_bezier_basis",
]
