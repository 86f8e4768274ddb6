import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_jacobi

from ptd.errors import DomainError
from ptd.quadrature import integrate_adaptive
from ptd.specfun import (
    JacobiParams,
    beta,
    hyp2f1_terminating,
    jacobi,
    jacobi_derivative,
    ln_gamma,
    pochhammer,
)

mpmath.mp.dps = 40


class TestLnGamma:
    def test_one_and_two_are_zero(self):
        assert ln_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
        assert ln_gamma(2.0) == pytest.approx(0.0, abs=1e-14)

    def test_half(self):
        assert ln_gamma(0.5) == pytest.approx(0.5723649429247001, abs=1e-14)

    def test_seven_and_a_quarter_against_recursion(self):
        # Gamma(7.25) = 6.25 * 5.25 * ... * 1.25 * Gamma(1.25)
        ref = mpmath.loggamma(mpmath.mpf("1.25"))
        for j in range(6):
            ref += mpmath.log(mpmath.mpf("1.25") + j)
        assert abs(ln_gamma(7.25) - float(ref)) < 1e-13

    @pytest.mark.parametrize("x", [1e-8, 1e-3, 0.1, 0.37, 1.5, 3.3, 9.99, 10.0, 25.5, 171.2, 1e4, 1e7])
    def test_against_mpmath(self, x):
        ref = float(mpmath.loggamma(x))
        # relative error of exp(ln_gamma) is the absolute error of ln_gamma
        assert abs(ln_gamma(x) - ref) <= 1e-12 * max(1.0, abs(ref))

    @given(st.floats(min_value=1e-6, max_value=500.0))
    @settings(max_examples=200, deadline=None)
    def test_property_matches_mpmath(self, x):
        ref = float(mpmath.loggamma(x))
        assert abs(ln_gamma(x) - ref) <= 1e-12 * max(1.0, abs(ref))

    @given(st.floats(min_value=0.01, max_value=100.0))
    @settings(max_examples=100, deadline=None)
    def test_property_recurrence(self, x):
        assert ln_gamma(x + 1) - ln_gamma(x) == pytest.approx(math.log(x), abs=1e-12)

    @pytest.mark.parametrize("x", [0.0, -1.0, -0.5, float("nan"), float("inf")])
    def test_rejects_non_positive(self, x):
        with pytest.raises(DomainError):
            ln_gamma(x)


class TestBetaPochhammer:
    def test_examples(self):
        assert beta(1, 1) == pytest.approx(1.0, rel=1e-14)
        assert beta(2, 3) == pytest.approx(1 / 12, rel=1e-14)

    def test_against_quadrature(self):
        ref = integrate_adaptive(lambda t: t**0.5 * (1 - t) ** 0.3723, 0.0, 1.0, rel_tol=1e-13)
        assert beta(1.5, 1.3723) == pytest.approx(ref, rel=1e-12)

    @given(st.floats(0.05, 20), st.floats(0.05, 20), st.floats(0.05, 20))
    @settings(max_examples=100, deadline=None)
    def test_gamma_ratio_identity(self, x, y, z):
        lhs = beta(x, y) * beta(x + y, z)
        rhs = beta(y, z) * beta(y + z, x)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    @given(st.floats(0.01, 50), st.floats(0.01, 50))
    @settings(max_examples=100, deadline=None)
    def test_symmetric(self, x, y):
        assert beta(x, y) == pytest.approx(beta(y, x), rel=1e-14)

    def test_beta_rejects_non_positive(self):
        with pytest.raises(DomainError):
            beta(0.0, 1.0)
        with pytest.raises(DomainError):
            beta(1.0, -2.0)

    def test_pochhammer_examples(self):
        assert pochhammer(3.7, 0) == 1.0
        assert pochhammer(-2, 3) == 0.0
        assert pochhammer(2.5, 4) == pytest.approx(216.5625, rel=1e-15)

    @given(st.floats(0.1, 30), st.integers(0, 12))
    @settings(max_examples=100, deadline=None)
    def test_pochhammer_gamma_ratio(self, a, n):
        assert pochhammer(a, n) == pytest.approx(math.exp(ln_gamma(a + n) - ln_gamma(a)), rel=1e-11)

    def test_pochhammer_rejects_negative_n(self):
        with pytest.raises(DomainError):
            pochhammer(1.0, -1)


class TestHypergeometric:
    def test_n_zero_is_one(self):
        assert hyp2f1_terminating(0, 3.3, 1.7, 0.4) == 1.0

    def test_two_terms(self):
        b, c, z = 2.5, 1.5, 0.3
        assert hyp2f1_terminating(-1, b, c, z) == pytest.approx(1 - b * z / c, rel=1e-15)

    def test_hand_sum(self):
        # 1 + (-2)(3)/(2) z + (-2)(-1)(3)(4)/((2)(3) 2!) z^2 = 1 - 1.5 + 0.5 at z = 1/2
        assert hyp2f1_terminating(-2, 3, 2, 0.5) == pytest.approx(0.0, abs=1e-15)

    def test_double_precision_sum_agrees_with_recurrence_at_moderate_degree(self):
        for x in np.linspace(-1, 1, 9):
            ser = pochhammer(1.5, 4) / 24 * hyp2f1_terminating(-4, 4 + 0.5 + 1.2 + 1, 1.5, (1 - x) / 2)
            assert ser == pytest.approx(jacobi(4, 0.5, 1.2, x), rel=1e-12, abs=1e-13)

    @pytest.mark.parametrize("n,b,c,z", [(3, 1.5, 2.5, 0.7), (5, -0.3, 0.8, -0.4), (4, 7.0, 1.2, 0.99)])
    def test_against_mpmath(self, n, b, c, z):
        ref = float(mpmath.hyp2f1(-n, b, c, z))
        assert hyp2f1_terminating(-n, b, c, z) == pytest.approx(ref, rel=1e-12, abs=1e-14)

    def test_array_argument(self):
        z = np.array([0.1, 0.2])
        out = hyp2f1_terminating(-1, 1.0, 1.0, z)
        np.testing.assert_allclose(out, 1 - z)

    def test_pole_rejected(self):
        with pytest.raises(DomainError):
            hyp2f1_terminating(-3, 1.0, -1.0, 0.5)

    def test_positive_first_parameter_rejected(self):
        with pytest.raises(DomainError):
            hyp2f1_terminating(2, 1.0, 1.0, 0.5)


def _jacobi_series(n, a, b, x):
    """P_n^(a,b)(x) = (a+1)_n / n! 2F1(-n, n+a+b+1; a+1; (1-x)/2), summed in 40 digits.

    In double precision the alternating sum loses up to ~1e-10 relative near
    x = -1 for n = 10, which would swamp the recurrence error being tested.
    """
    a, b, z = mpmath.mpf(a), mpmath.mpf(b), (1 - mpmath.mpf(x)) / 2
    term = total = mpmath.mpf(1)
    for j in range(n):
        term = term * (j - n) * (n + a + b + 1 + j) / ((a + 1 + j) * (j + 1)) * z
        total += term
    return float(mpmath.rf(a + 1, n) / mpmath.factorial(n) * total)


class TestJacobi:
    def test_degree_zero(self):
        assert jacobi(0, 0.3, 0.4, 0.2) == 1.0

    def test_degree_one_example(self):
        assert jacobi(1, 1.0, 2.0, 0.0) == pytest.approx(-0.5, abs=1e-15)

    def test_reflection(self):
        x = 0.3
        assert jacobi(3, 0.5, 1.5, -x) == pytest.approx(-jacobi(3, 1.5, 0.5, x), rel=1e-13)

    def test_params_object(self):
        p = JacobiParams(2, 0.5, 1.5)
        assert p(0.1) == jacobi(2, 0.5, 1.5, 0.1)

    @pytest.mark.parametrize("bad", [(-1, 0.0, 0.0), (2, -1.0, 0.0), (2, 0.0, -1.5), (1.5, 0.0, 0.0)])
    def test_params_validated(self, bad):
        with pytest.raises(DomainError):
            JacobiParams(*bad)

    def test_grid_against_series(self):
        xs = np.linspace(-1, 1, 21)
        worst = 0.0
        for n in range(11):
            for a in (-0.9, -0.5, 0.0, 1.3, 5.0):
                for b in (-0.9, 0.2, 2.5, 5.0):
                    rec = jacobi(n, a, b, xs)
                    ser = np.array([_jacobi_series(n, a, b, x) for x in xs])
                    scale = np.max(np.abs(ser))
                    worst = max(worst, float(np.max(np.abs(rec - ser)) / scale))
        assert worst < 1e-10

    @given(st.integers(0, 10), st.floats(-0.9, 5), st.floats(-0.9, 5), st.floats(-1, 1))
    @settings(max_examples=200, deadline=None)
    def test_against_scipy(self, n, a, b, x):
        ref = eval_jacobi(n, a, b, x)
        assert jacobi(n, a, b, x) == pytest.approx(ref, rel=1e-10, abs=1e-10)

    def test_orthogonality(self):
        a, b = 0.7, -0.3
        for m in range(5):
            for n in range(m + 1, 5):
                val = integrate_adaptive(
                    lambda x: (1 - x) ** a * (1 + x) ** b * jacobi(m, a, b, x) * jacobi(n, a, b, x),
                    -1.0, 1.0, rel_tol=1e-12,
                )
                assert abs(val) < 1e-8

    @pytest.mark.parametrize("n", [0, 1, 2, 5])
    def test_derivative_matches_finite_difference(self, n):
        a, b, x, h = 0.4, 1.1, 0.23, 1e-6
        fd = (jacobi(n, a, b, x + h) - jacobi(n, a, b, x - h)) / (2 * h)
        assert jacobi_derivative(n, a, b, x) == pytest.approx(fd, rel=1e-7, abs=1e-9)
