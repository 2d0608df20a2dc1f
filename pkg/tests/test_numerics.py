"""Kernel tests: quadrature, ODE sweeps, roots, least squares, derivatives."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zsscatter.errors import DegreeZero, NonFiniteValue, RankDeficient
from zsscatter.numerics import (
    UniformGrid,
    cumulative_integral_from_left,
    cumulative_integral_from_right,
    differentiate,
    integrate_linear_ode2,
    least_squares_solve,
    polynomial_roots,
)


class TestUniformGrid:
    def test_basic_layout(self):
        g = UniformGrid(1.0, 5)
        assert np.allclose(g.nodes, [-1.0, -0.5, 0.0, 0.5, 1.0])
        assert g.step == 0.5
        assert g.nodes[g.center_index] == 0.0

    def test_zero_is_exact_node(self):
        g = UniformGrid(15.0, 16001)
        assert g.nodes[g.center_index] == 0.0

    @pytest.mark.parametrize("n", [2, 4, 1])
    def test_rejects_even_or_tiny_counts(self, n):
        with pytest.raises(ValueError):
            UniformGrid(1.0, n)

    def test_rejects_nonpositive_width(self):
        with pytest.raises(ValueError):
            UniformGrid(0.0, 5)

    def test_shape_mismatch(self):
        g = UniformGrid(1.0, 5)
        with pytest.raises(ValueError):
            g.require_same(np.zeros(4))


class TestCumulativeIntegrals:
    def test_constant_from_left(self):
        g = UniformGrid(1.0, 5)
        F = cumulative_integral_from_left(g, np.ones(5))
        assert np.allclose(F, [0.0, 0.5, 1.0, 1.5, 2.0])

    def test_zero_integrand(self):
        g = UniformGrid(1.0, 5)
        assert np.all(cumulative_integral_from_left(g, np.zeros(5)) == 0.0)
        assert np.all(cumulative_integral_from_right(g, np.zeros(5)) == 0.0)

    def test_odd_integrand_cancels(self):
        g = UniformGrid(1.0, 5)
        F = cumulative_integral_from_left(g, g.nodes.copy())
        assert abs(F[-1]) < 1e-12

    def test_constant_from_right(self):
        g = UniformGrid(1.0, 5)
        F = cumulative_integral_from_right(g, np.ones(5))
        assert abs(F[0] - 2.0) < 1e-14
        assert F[-1] == 0.0

    def test_exponential_from_right(self):
        g = UniformGrid(1.0, 2001)
        F = cumulative_integral_from_right(g, np.exp(g.nodes))
        exact = np.e - np.exp(g.nodes)
        assert np.max(np.abs(F - exact)) < 1e-8

    @given(st.lists(st.floats(-2.0, 2.0), min_size=4, max_size=4))
    @settings(max_examples=50, deadline=None)
    def test_cubic_exactness(self, coeffs):
        g = UniformGrid(1.3, 11)
        poly = np.polynomial.Polynomial(coeffs)
        F = cumulative_integral_from_left(g, poly(g.nodes))
        anti = poly.integ()
        exact = anti(g.nodes) - anti(g.nodes[0])
        assert np.max(np.abs(F - exact)) < 1e-12

    @given(st.lists(st.floats(-1.0, 1.0), min_size=7, max_size=7))
    @settings(max_examples=50, deadline=None)
    def test_direction_consistency(self, samples):
        g = UniformGrid(1.0, 7)
        f = np.asarray(samples)
        left = cumulative_integral_from_left(g, f)
        right = cumulative_integral_from_right(g, f)
        assert abs(left[-1] - right[0]) < 1e-12


class TestOdeIntegration:
    def test_constant_solution_with_drift(self):
        g = UniformGrid(2.0, 101)
        w, wp = integrate_linear_ode2(g, np.zeros(101), drift=-1.0,
                                      start_index=100, start_value=1.0,
                                      start_slope=0.0, direction=-1)
        assert np.max(np.abs(w - 1.0)) < 1e-12
        assert np.max(np.abs(wp)) < 1e-12

    def test_linear_solution(self):
        g = UniformGrid(2.0, 101)
        c = g.center_index
        w, wp = integrate_linear_ode2(g, np.zeros(101), drift=0.0,
                                      start_index=c, start_value=0.0,
                                      start_slope=1.0, direction=1)
        assert np.max(np.abs(w[c:] - g.nodes[c:])) < 1e-12

    def test_constant_q_closed_form(self):
        # w'' = 4w with w(-1)=1, w'(-1)=0 has solution cosh(2(x+1))
        g = UniformGrid(1.0, 2001)
        w, wp = integrate_linear_ode2(g, np.full(2001, 4.0), drift=0.0,
                                      start_index=0, start_value=1.0,
                                      start_slope=0.0, direction=1)
        exact = np.cosh(2.0 * (g.nodes + 1.0))
        assert np.max(np.abs(w - exact)) < 1e-8

    def test_fourth_order_convergence(self):
        # halving h should shrink the error by a factor >= 12
        def max_err(n):
            g = UniformGrid(1.0, n)
            w, _ = integrate_linear_ode2(g, np.full(n, 4.0), drift=0.0,
                                         start_index=0, start_value=1.0,
                                         start_slope=0.0, direction=1)
            return np.max(np.abs(w - np.cosh(2.0 * (g.nodes + 1.0))))

        assert max_err(101) / max_err(201) >= 12.0

    def test_overflow_raises(self):
        g = UniformGrid(1.0, 101)
        with pytest.raises(NonFiniteValue):
            integrate_linear_ode2(g, np.full(101, 1e8), drift=0.0,
                                  start_index=0, start_value=1.0,
                                  start_slope=0.0, direction=1)

    def test_bad_direction(self):
        g = UniformGrid(1.0, 5)
        with pytest.raises(ValueError):
            integrate_linear_ode2(g, np.zeros(5), drift=0.0, start_index=0,
                                  start_value=1.0, start_slope=0.0, direction=2)


class TestPolynomialRoots:
    def test_quadratic(self):
        roots = sorted(polynomial_roots([-1.0, 0.0, 1.0]), key=lambda r: r.real)
        assert abs(roots[0] + 1.0) < 1e-12
        assert abs(roots[1] - 1.0) < 1e-12

    def test_triple_zero(self):
        roots = polynomial_roots([0.0, 0.0, 0.0, 1.0])
        assert roots.shape == (3,)
        assert np.max(np.abs(roots)) < 1e-8

    def test_known_factors(self):
        factors = np.array([0.3, 0.7j, -2.0])
        coeffs = np.polynomial.polynomial.polyfromroots(factors)
        roots = polynomial_roots(coeffs)
        for f in factors:
            assert np.min(np.abs(roots - f)) < 1e-10

    def test_constant_rejected(self):
        with pytest.raises(DegreeZero):
            polynomial_roots([3.0])
        with pytest.raises(DegreeZero):
            polynomial_roots([3.0, 0.0, 0.0])

    @given(st.lists(st.complex_numbers(max_magnitude=2.0), min_size=2, max_size=8))
    @settings(max_examples=50, deadline=None)
    def test_residual_bound(self, factors):
        coeffs = np.polynomial.polynomial.polyfromroots(factors)
        roots = polynomial_roots(coeffs)
        scale = np.max(np.abs(coeffs))
        for r in roots:
            p = np.polynomial.polynomial.polyval(r, coeffs)
            assert abs(p) <= 1e-8 * scale * max(1.0, abs(r)) ** len(factors)

    @given(st.complex_numbers(max_magnitude=1.5))
    @settings(max_examples=30, deadline=None)
    def test_appending_a_factor(self, c):
        base = np.polynomial.polynomial.polyfromroots([0.5, -0.25 + 0.5j])
        grown = np.convolve(base, [-c, 1.0])
        roots = polynomial_roots(grown)
        assert np.min(np.abs(roots - c)) < 1e-8


class TestLeastSquares:
    def test_identity(self):
        x, res, cond = least_squares_solve(np.eye(3), np.array([1.0, 2.0, 3.0]))
        assert np.allclose(x, [1.0, 2.0, 3.0])
        assert res < 1e-14
        assert cond == pytest.approx(1.0)

    def test_mean_of_two_points(self):
        x, res, _ = least_squares_solve(np.ones((2, 1)), np.array([0.0, 2.0]))
        assert abs(x[0] - 1.0) < 1e-14
        assert abs(res - np.sqrt(2.0)) < 1e-12

    def test_against_normal_equations(self):
        rng = np.random.default_rng(7)
        A = rng.standard_normal((40, 10))
        b = rng.standard_normal(40)
        x, _, _ = least_squares_solve(A, b)
        ref = np.linalg.solve(A.T @ A, A.T @ b)
        assert np.max(np.abs(x - ref)) < 1e-8

    def test_residual_orthogonality(self):
        rng = np.random.default_rng(11)
        A = rng.standard_normal((30, 6))
        b = rng.standard_normal(30)
        x, _, _ = least_squares_solve(A, b)
        r = A @ x - b
        assert np.max(np.abs(A.T @ r)) < 1e-8 * np.linalg.norm(b)

    def test_rank_deficient_raises(self):
        A = np.ones((4, 2))  # identical columns
        with pytest.raises(RankDeficient):
            least_squares_solve(A, np.ones(4))

    def test_rank_deficient_truncates_on_request(self):
        A = np.zeros((4, 3))
        A[:, 0] = [1.0, 1.0, 0.0, 0.0]
        A[:, 1] = [0.0, 0.0, 1.0, 1.0]
        A[:, 2] = A[:, 0]  # duplicate column
        b = np.array([2.0, 2.0, 4.0, 4.0])
        x, res, _ = least_squares_solve(A, b, on_deficient="truncate")
        assert res < 1e-12
        assert np.allclose(A @ x, b)

    def test_underdetermined_rejected(self):
        with pytest.raises(ValueError):
            least_squares_solve(np.ones((2, 3)), np.ones(2))


class TestDifferentiate:
    def test_constant(self):
        g = UniformGrid(1.0, 11)
        assert np.max(np.abs(differentiate(g, np.full(11, 3.7)))) < 1e-12

    def test_square_exact(self):
        g = UniformGrid(2.0, 21)
        d = differentiate(g, g.nodes ** 2)
        assert np.max(np.abs(d - 2.0 * g.nodes)) < 1e-10

    def test_sine(self):
        g = UniformGrid(1.0, 2001)
        d = differentiate(g, np.sin(g.nodes))
        assert np.max(np.abs(d - np.cos(g.nodes))) < 1e-10
