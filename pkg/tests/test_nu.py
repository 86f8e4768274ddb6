import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.polynomial import Polynomial
from scipy.special import eval_genlaguerre, eval_hermite

from ptd import nu
from ptd.errors import DomainError, InconsistentParameterError, UnsupportedShapeError
from ptd.specfun import jacobi


def closed_form_eps(gamma, delta, n_r):
    return 0.5 * (math.sqrt(1 + 4 * delta) - math.sqrt(1 + 4 * gamma) - 2 * (2 * n_r + 1))


def brute_force_t(problem):
    """Roots in t of disc(radicand(t)), found by sampling the discriminant.

    The discriminant is a quadratic in t, so three samples determine it; its
    roots then come from numpy, independent of the engine's closed-form path.
    """
    ts = np.array([-1.0, 0.0, 1.0])
    ds = []
    for t in ts:
        c = [nu.coef(nu.radicand(problem, t), i) for i in range(3)]
        ds.append(c[1] ** 2 - 4 * c[2] * c[0])
    fit = Polynomial.fit(ts, ds, 2).convert()
    roots = fit.roots()
    return sorted(float(r.real) for r in roots if abs(r.imag) < 1e-9)


class TestProblem:
    def test_degree_bounds(self):
        with pytest.raises(DomainError):
            nu.NUProblem(tau_tilde=[0, 0, 1], sigma=[0, 1], sigma_tilde=[0])
        with pytest.raises(DomainError):
            nu.NUProblem(tau_tilde=[0], sigma=[0, 0, 0, 1], sigma_tilde=[0])

    def test_degree_is_exact(self):
        assert nu.degree(Polynomial([1.0, 0.0, 0.0])) == 0
        assert nu.degree(Polynomial([1.0, 1e-300])) == 1


class TestCandidates:
    def test_one_dimensional_problem_numbers(self):
        problem = nu.poschl_teller_problem(0.0, 2.0, 1.0)
        assert nu.t_candidates(problem) == pytest.approx([0.0, 1.0], abs=1e-14)

    def test_linear_radicand_forces_zero(self):
        problem = nu.NUProblem(tau_tilde=[0.0], sigma=[0.0, 1.0], sigma_tilde=[0.0])
        assert nu.t_candidates(problem) == [0.0]

    def test_two_real_roots(self):
        # radicand = (1 + t) + (2 + t) s^2, discriminant -4 (1 + t)(2 + t)
        problem = nu.NUProblem(tau_tilde=[0.0], sigma=[1.0, 0.0, 1.0], sigma_tilde=[-1.0, 0.0, -1.0])
        assert nu.t_candidates(problem) == pytest.approx([-2.0, -1.0])

    def test_complex_roots_give_empty_list(self, caplog):
        # radicand = -3/4 + t s + s^2: discriminant t^2 + 3 never vanishes
        problem = nu.NUProblem(tau_tilde=[0.0], sigma=[0.0, 1.0], sigma_tilde=[1.0, 0.0, -1.0])
        with caplog.at_level("WARNING"):
            assert nu.t_candidates(problem) == []
        assert "complex" in caplog.text

    def test_harmonic_oscillator_fixture(self):
        # sigma = s, tau_tilde = 1/2, sigma_tilde = -(xi^2 s^2 - 2 e s)/4: half-line problem
        xi, e = 1.3, 0.7
        problem = nu.NUProblem(tau_tilde=[0.5], sigma=[0.0, 1.0], sigma_tilde=[0.0, e / 2, -xi**2 / 4])
        assert nu.t_candidates(problem) == pytest.approx(brute_force_t(problem), abs=1e-9)

    @given(
        st.lists(st.floats(-3, 3), min_size=2, max_size=2),
        st.lists(st.floats(-3, 3), min_size=3, max_size=3),
        st.lists(st.floats(-3, 3), min_size=3, max_size=3),
    )
    @settings(max_examples=200, deadline=None)
    def test_against_brute_force(self, tau, sigma, sigma_t):
        problem = nu.NUProblem(tau_tilde=tau, sigma=sigma, sigma_tilde=sigma_t)
        A = sigma[1] ** 2 - 4 * sigma[2] * sigma[0]
        assume(abs(A) > 1e-2)
        got = nu.t_candidates(problem)
        ref = brute_force_t(problem)
        assume(len(ref) == 2 and abs(ref[0] - ref[1]) > 1e-6)
        assert got == pytest.approx(ref, rel=1e-7, abs=1e-7)
        for t in got:
            c = [nu.coef(nu.radicand(problem, t), i) for i in range(3)]
            assert abs(c[1] ** 2 - 4 * c[2] * c[0]) < 1e-8 * max(1.0, c[1] ** 2, abs(4 * c[2] * c[0]))


GRID = [(g, d) for g in (-0.25, 0.0, 0.75, 2.0, 3.75) for d in (2.0, 5.0, 8.0, 16.0, 32.0)]


class TestPi:
    @pytest.mark.parametrize("gamma,delta", GRID)
    def test_lower_branch_matches_closed_form(self, gamma, delta):
        eps = closed_form_eps(gamma, delta, 0)
        if eps <= 0:
            pytest.skip("no bound ground state on this grid point")
        w = math.sqrt(1 + 4 * gamma)
        problem = nu.poschl_teller_problem(gamma, delta, eps)
        sol = nu.solve(problem)
        # (1 - s)/2 - [(2 eps + w) s - w]/2
        assert nu.coef(sol.pi, 0) == pytest.approx(0.5 * (1 + w), abs=1e-12)
        assert nu.coef(sol.pi, 1) == pytest.approx(-0.5 * (1 + 2 * eps + w), abs=1e-12)
        assert sol.sign == -1

    def test_specific_values(self):
        eps = (math.sqrt(33) - 5) / 2
        problem = nu.poschl_teller_problem(2.0, 8.0, eps)
        t = -0.5 * (2.0 - 8.0 + eps**2) - 0.5 * eps * 3.0
        pi = nu.pi_for(problem, t, -1)
        assert pi.coef[0] == pytest.approx(2.0, abs=1e-12)
        assert pi.coef[1] == pytest.approx(-0.5 * (1 + 2 * eps + 3), abs=1e-12)

    def test_degenerate_zero(self):
        sigma = Polynomial([0.0, 2.0, -2.0])
        problem = nu.NUProblem(tau_tilde=sigma.deriv(), sigma=sigma, sigma_tilde=sigma)
        pi = nu.pi_for(problem, 1.0, -1)
        assert np.allclose(pi.coef, 0.0)

    def test_inconsistent_t_rejected(self):
        problem = nu.poschl_teller_problem(2.0, 8.0, 0.5)
        with pytest.raises(InconsistentParameterError):
            nu.pi_for(problem, 0.123, -1)

    def test_bad_sign(self):
        problem = nu.poschl_teller_problem(0.0, 2.0, 1.0)
        with pytest.raises(DomainError):
            nu.pi_for(problem, 0.0, 0)


class TestAdmissible:
    def test_lower_branch(self):
        gamma, delta, eps = 2.0, 8.0, 0.3723
        w = 3.0
        problem = nu.poschl_teller_problem(gamma, delta, eps)
        t = -0.5 * (gamma - delta + eps**2) - 0.5 * eps * w
        tau, ok = nu.admissible(problem, nu.pi_for(problem, t, -1))
        assert ok
        assert tau.coef[0] == pytest.approx(2 + w)
        assert tau.coef[1] == pytest.approx(-(4 + 2 * eps + w))

    def test_upper_branch_rejected_for_large_eps(self):
        gamma, delta, eps = 0.0, 30.0, 4.0
        problem = nu.poschl_teller_problem(gamma, delta, eps)
        t = -0.5 * (gamma - delta + eps**2) + 0.5 * eps
        _, ok = nu.admissible(problem, nu.pi_for(problem, t, 1))
        assert not ok

    def test_trivial_rejection(self):
        problem = nu.NUProblem(tau_tilde=[0.0], sigma=[0.0, 1.0], sigma_tilde=[0.0])
        tau, ok = nu.admissible(problem, Polynomial([0.0, 1.0]))
        assert not ok
        assert tau.coef[1] == 2.0

    @given(st.sampled_from(GRID), st.floats(0.01, 5))
    @settings(max_examples=100, deadline=None)
    def test_solution_invariants(self, gd, eps):
        problem = nu.poschl_teller_problem(gd[0], gd[1], eps)
        for sol in nu.solutions(problem):
            assert sol.lam == sol.t + nu.coef(sol.pi, 1)
            np.testing.assert_array_equal(
                (problem.tau_tilde + 2 * sol.pi).coef, sol.tau.coef
            )
            assert sol.tau_slope < 0


class TestQuantization:
    def test_root_ground(self):
        assert nu.quantization_root(2.0, 8.0, 0) == pytest.approx((math.sqrt(33) - 5) / 2, abs=1e-12)

    def test_one_dimensional_numbers(self):
        # gamma = 0, delta = 2: residual vanishes where eps = (3 - 1 - 2)/2 = 0 ...
        problem = nu.poschl_teller_problem(0.0, 2.0, 1e-9)
        assert abs(nu.quantization(problem, nu.solve(problem), 0)) < 1e-8
        # ... and for the even 1D indexing the signed root k - 2 = -1 gives eps = 1
        problem = nu.poschl_teller_problem(0.0, 2.0, 1.0)
        sol = nu.solve(problem)
        assert nu.quantization(problem, sol, 0) == pytest.approx(-2.0)

    def test_n_zero_residual_is_lambda(self):
        problem = nu.poschl_teller_problem(2.0, 8.0, 0.9)
        sol = nu.solve(problem)
        assert nu.quantization(problem, sol, 0) == sol.lam

    @pytest.mark.parametrize("gamma,delta", GRID)
    @pytest.mark.parametrize("n_r", [0, 1, 2])
    def test_root_matches_closed_form(self, gamma, delta, n_r):
        eps = closed_form_eps(gamma, delta, n_r)
        if eps < 0:
            with pytest.raises(DomainError):
                nu.quantization_root(gamma, delta, n_r)
            return
        assert nu.quantization_root(gamma, delta, n_r) == pytest.approx(eps, abs=1e-10)


class TestWeight:
    def test_pt_weight(self):
        gamma, delta, eps = 2.0, 8.0, 0.3723
        sol = nu.solve(nu.poschl_teller_problem(gamma, delta, eps))
        a, b = sol.weight_exponents
        assert a == pytest.approx(1.5, abs=1e-12)  # v - 1/2 with v = 2
        assert b == pytest.approx(eps, abs=1e-12)

    def test_constant_weight(self):
        sigma = Polynomial([0.0, 2.0, -2.0])
        assert nu.weight_exponents(sigma, sigma.deriv()) == (0.0, 0.0)

    def test_pearson_equation_pointwise(self):
        sigma = Polynomial([0.0, 2.0, -2.0])
        a, b = 1.0, 2.0
        tau = sigma.deriv() + Polynomial([2 * a, -2 * a - 2 * b])
        assert nu.weight_exponents(sigma, tau) == pytest.approx((a, b))
        rho = nu.weight(sigma, tau)
        for s in (0.3, 0.7):
            h = 1e-6
            lhs = (sigma(s + h) * rho(s + h) - sigma(s - h) * rho(s - h)) / (2 * h)
            assert lhs == pytest.approx(tau(s) * rho(s), rel=1e-8)

    def test_unsupported_shape(self):
        with pytest.raises(UnsupportedShapeError):
            nu.weight_exponents(Polynomial([1.0, 0.0, 1.0]), Polynomial([0.0, -1.0]))
        with pytest.raises(UnsupportedShapeError):
            nu.weight_exponents(Polynomial([0.0, 1.0]), Polynomial([1.0, -1.0]))


class TestRodrigues:
    S = np.linspace(0.1, 0.9, 9)

    def test_degree_zero(self):
        y = nu.rodrigues(Polynomial([0.0, 2.0, -2.0]), 0.4, 1.2, 0)
        assert np.allclose(y.coef, [1.0])

    @pytest.mark.parametrize("n,a,b", [(1, 1.0, 1.3723), (2, 1.0, 1.0), (3, 0.5, 2.2), (8, 1.5, 0.3)])
    def test_proportional_to_jacobi(self, n, a, b):
        y = nu.rodrigues(Polynomial([0.0, 2.0, -2.0]), a, b, n)
        ratio = y(self.S) / jacobi(n, a, b, 1 - 2 * self.S)
        assert np.ptp(ratio) <= 1e-10 * abs(ratio[0])
        assert ratio[0] == pytest.approx(2**n * math.factorial(n), rel=1e-10)

    def test_convert_gives_power_basis(self):
        y = nu.rodrigues(Polynomial([0.0, 2.0, -2.0]), 1.0, 1.0, 1)
        # n = 1, a = b = 1: 2 * P_1^(1,1)(1 - 2s) = 4 (1 - 2s)
        np.testing.assert_allclose(y.convert().coef, [4.0, -8.0], atol=1e-14)

    @pytest.mark.parametrize("n", [0, 1, 3, 5])
    def test_laguerre_shape(self, n):
        a = 0.7
        y = nu.rodrigues(Polynomial([0.0, 1.0]), a, -1.0, n)
        x = np.linspace(0.1, 5, 7)
        np.testing.assert_allclose(y(x), math.factorial(n) * eval_genlaguerre(n, a, x), rtol=1e-10)

    @pytest.mark.parametrize("n", [0, 1, 4, 6])
    def test_hermite_shape(self, n):
        y = nu.rodrigues(Polynomial([1.0]), 0.0, -1.0, n)
        x = np.linspace(-2, 2, 7)
        np.testing.assert_allclose(y(x), (-1) ** n * eval_hermite(n, x), rtol=1e-10, atol=1e-9)

    def test_degree_limit(self):
        with pytest.raises(DomainError):
            nu.rodrigues(Polynomial([0.0, 2.0, -2.0]), 1.0, 1.0, 9)
