"""
Unit tests for window function bases
"""
import numpy as np
import pytest
from src.superparametric.basis.window_basis import (
    BasisFamily,
    BasisPiece,
    Domain,
    KnotVector,
    WindowBasis,
    basis_matrix,
    bernstein_matrix,
    bezier_eval,
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
from src.superparametric.estimator.density import piecewise_quadrature, quadrature
from src.superparametric.exceptions import DegenerateBasisError, SampleDataError

# 31 distinct, unevenly spaced observations on [0, 1]
UNEVEN_SAMPLES = np.linspace(0.0, 1.0, 31) ** 2


class TestDomain:
    """Tests for Domain and extend_domain"""

    def test_width_and_contains(self):
        domain = Domain(1.0, 3.0)
        assert domain.width == 2.0
        assert list(domain.contains([0.5, 1.0, 2.0, 3.0, 3.5])) == [False, True, True, True, False]

    def test_degenerate_domain_rejected(self):
        with pytest.raises(ValueError):
            Domain(1.0, 1.0)

    def test_extension(self):
        domain = extend_domain(0.0, 4.0, 0.05)
        assert domain.lo == pytest.approx(-0.2)
        assert domain.hi == pytest.approx(4.2)


class TestBernstein:
    """Tests for binomials and raw Bernstein polynomials"""

    def test_binomial_exact(self):
        assert binomial(30, 15) == 155117520
        assert binomial(10, 0) == 1
        assert binomial(10, 10) == 1

    def test_bezier_eval_endpoints(self):
        assert bezier_eval(0, 5, 0.0) == 1.0
        assert bezier_eval(5, 5, 1.0) == 1.0
        assert bezier_eval(2, 5, 0.0) == 0.0

    def test_bezier_eval_bad_arguments(self):
        with pytest.raises(ValueError):
            bezier_eval(6, 5, 0.5)
        with pytest.raises(ValueError):
            bezier_eval(1, 5, 1.5)

    @pytest.mark.parametrize("n", [1, 10, 30])
    def test_partition_of_unity(self, n):
        """Raw Bernstein polynomials sum to one on [0, 1]"""
        t = np.linspace(0.0, 1.0, 1000)
        np.testing.assert_allclose(bernstein_matrix(n, t).sum(axis=0), 1.0, atol=1e-12)

    def test_matrix_matches_scalar_eval(self):
        t = np.linspace(0.0, 1.0, 7)
        matrix = bernstein_matrix(4, t)
        for i in range(5):
            for j, tj in enumerate(t):
                assert matrix[i, j] == pytest.approx(bezier_eval(i, 4, tj), abs=1e-15)


class TestBezierBasis:
    """Tests for single and piecewise Bezier bases"""

    def test_window_count(self):
        assert make_bezier_basis(Domain(0.0, 4.0), 10).window_count == 11

    def test_normalizer_is_n_plus_one_over_width(self):
        basis = make_bezier_basis(Domain(0.0, 2.0), 10)
        np.testing.assert_allclose(basis.normalizers, 11 / 2.0)
        np.testing.assert_allclose(basis.areas, 2.0 / 11)

    @pytest.mark.parametrize("n", [1, 10])
    def test_windows_integrate_to_one(self, n):
        domain = Domain(-1.0, 2.0)
        basis = make_bezier_basis(domain, n)
        for i in range(n + 1):
            area = quadrature(lambda x, i=i: basis.evaluate(x)[i], domain)
            assert area == pytest.approx(1.0, abs=1e-10)

    def test_zero_outside_domain(self):
        basis = make_bezier_basis(Domain(0.0, 1.0), 3)
        values = basis.evaluate([-0.1, 1.1])
        assert np.all(values == 0.0)

    def test_basis_matrix_shape(self):
        basis = make_bezier_basis(Domain(0.0, 1.0), 3)
        assert basis_matrix(basis, np.linspace(0, 1, 5)).shape == (4, 5)

    def test_piecewise_concatenation(self):
        basis = make_piecewise_bezier_basis([Domain(3.0, 4.0), Domain(1.0, 2.0)], 4)
        assert basis.family is BasisFamily.PIECEWISE_BEZIER
        assert basis.window_count == 10
        assert basis.pieces[0].domain == Domain(1.0, 2.0)
        assert [s.start for s in basis.piece_slices()] == [0, 5]
        assert basis.domain == Domain(1.0, 4.0)
        # the gap between pieces carries no window
        assert np.all(basis.evaluate([2.5]) == 0.0)

    def test_piecewise_overlap_rejected(self):
        with pytest.raises(ValueError):
            make_piecewise_bezier_basis([Domain(0.0, 2.0), Domain(1.0, 3.0)], 3)


class TestBSplineKnots:
    """Tests for knot vectors built from observations"""

    def test_knot_rules(self):
        kv = make_bspline_knots([0.0, 1.0, 2.0, 3.0, 4.0], 2)
        # n = m = 4, k = 2: t_0 = x_0, t_i = x_{i-1} for 2 <= i <= 4, t_5 = t_6 = x_4
        np.testing.assert_array_equal(kv.knots, [0.0, 0.0, 1.0, 2.0, 3.0, 4.0, 4.0])
        assert kv.basis_count == 5

    def test_order_one_is_clamped(self):
        kv = make_bspline_knots([0.0, 1.0, 2.0, 3.0], 1)
        np.testing.assert_array_equal(kv.knots, [0.0, 1.0, 2.0, 3.0, 3.0])

    def test_too_few_samples(self):
        with pytest.raises(SampleDataError):
            make_bspline_knots([0.0, 1.0, 2.0], 4)

    def test_unsorted_samples(self):
        with pytest.raises(SampleDataError):
            make_bspline_knots([0.0, 2.0, 1.0, 3.0], 2)

    def test_decreasing_knot_vector_rejected(self):
        with pytest.raises(ValueError):
            KnotVector([0.0, 2.0, 1.0], 1)


class TestBSplineEvaluation:
    """Tests for the Cox-de Boor recursion"""

    @pytest.mark.parametrize("k", [2, 4, 12])
    def test_partition_of_unity_on_interior(self, k):
        kv = make_bspline_knots(UNEVEN_SAMPLES, k)
        n = kv.basis_count - 1
        lo, hi = kv.knots[k - 1], kv.knots[n + 1]
        x = np.linspace(lo, hi, 1000, endpoint=False)
        np.testing.assert_allclose(bspline_basis_matrix(kv, x).sum(axis=0), 1.0, atol=1e-10)

    def test_scalar_matches_matrix(self):
        kv = make_bspline_knots(UNEVEN_SAMPLES, 4)
        x = np.linspace(0.0, 1.0, 13)
        matrix = bspline_basis_matrix(kv, x)
        for i in (0, 5, kv.basis_count - 1):
            for j, xj in enumerate(x):
                assert bspline_eval(i, 4, kv, xj) == pytest.approx(matrix[i, j], abs=1e-14)

    def test_right_end_is_covered(self):
        kv = KnotVector([0.0, 0.0, 1.0, 1.0], 2)
        assert bspline_eval(1, 2, kv, 1.0) == pytest.approx(1.0)

    def test_zero_outside_knots(self):
        kv = make_bspline_knots(UNEVEN_SAMPLES, 3)
        assert bspline_eval(0, 3, kv, -0.5) == 0.0
        assert bspline_eval(0, 3, kv, 1.5) == 0.0

    def test_area_formula(self):
        kv = KnotVector([0.0, 1.0, 3.0, 4.0], 3)
        assert bspline_area(0, 3, kv) == pytest.approx(4.0 / 3.0)

    def test_index_out_of_range(self):
        kv = KnotVector([0.0, 1.0, 2.0], 1)
        with pytest.raises(ValueError):
            bspline_eval(2, 1, kv, 0.5)


class TestBSplineBasis:
    """Tests for the normalized B-spline basis on the extended domain"""

    def test_windows_integrate_to_one(self):
        basis = make_bspline_basis(UNEVEN_SAMPLES, 12)
        piece = basis.pieces[0]
        knots = piece.knots.knots
        for i in range(basis.window_count):
            area = piecewise_quadrature(lambda x, i=i: basis.evaluate(x)[i], piece.domain, knots, panels=1024)
            assert area == pytest.approx(1.0, abs=1e-8)

    def test_boundary_knots_sit_on_extended_ends(self):
        basis = make_bspline_basis(UNEVEN_SAMPLES, 4, extension_fraction=0.05)
        piece = basis.pieces[0]
        assert piece.domain.lo == pytest.approx(-0.05)
        assert piece.domain.hi == pytest.approx(1.05)
        np.testing.assert_allclose(piece.knots.knots[:4], -0.05)
        np.testing.assert_allclose(piece.knots.knots[-4:], 1.05)

    def test_parzen_order_one(self):
        """Order-one windows are disjoint indicators"""
        basis = make_bspline_basis([0.0, 1.0, 2.0, 3.0], 1)
        values = basis.evaluate([0.5, 1.5, 2.5])
        assert np.all((values > 0).sum(axis=0) == 1)

    def test_zero_area_windows_dropped(self):
        samples = [0.0, 1.0, 1.0, 1.0, 1.0, 2.0]
        basis = make_bspline_basis(samples, 1)
        # three of the six order-one windows sit on the repeated knot
        assert basis.window_count == 3
        assert np.all(basis.areas > 0)

    def test_identical_samples(self):
        with pytest.raises(DegenerateBasisError):
            make_bspline_basis([1.0, 1.0, 1.0, 1.0], 2)

    def test_bspline_piece_needs_knots(self):
        with pytest.raises(ValueError):
            BasisPiece(BasisFamily.BSPLINE, Domain(0.0, 1.0), 2, [0], [1.0], [1.0])


class TestCoverage:
    """Tests for coverage_check"""

    def test_all_covered(self):
        basis = make_bezier_basis(Domain(0.0, 1.0), 5)
        assert coverage_check(basis, [0.0, 0.3, 1.0]) == []

    def test_uncovered_indices(self):
        basis = make_piecewise_bezier_basis([Domain(0.0, 1.0), Domain(2.0, 3.0)], 3)
        assert coverage_check(basis, [0.5, 1.5, 2.5, 4.0]) == [1, 3]

    def test_empty_basis_rejected(self):
        with pytest.raises(DegenerateBasisError):
            WindowBasis(BasisFamily.BEZIER, ())
