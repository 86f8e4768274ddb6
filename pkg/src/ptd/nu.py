"""Nikiforov-Uvarov reduction for equations of hypergeometric type.

An equation

    psi'' + (tau_tilde / sigma) psi' + (sigma_tilde / sigma^2) psi = 0

with ``deg sigma, deg sigma_tilde <= 2`` and ``deg tau_tilde <= 1`` is turned
into ``sigma y'' + tau y' + lambda y = 0`` by ``psi = phi(s) y(s)``.  The
factor is fixed by a linear polynomial

    pi = (sigma' - tau_tilde)/2 +- sqrt(((sigma' - tau_tilde)/2)^2 - sigma_tilde + t sigma)

where ``t`` makes the radicand a perfect square, and polynomial solutions
exist when ``lambda = t + pi'`` equals ``-n tau' - n(n-1) sigma''/2``.

Polynomials are :class:`numpy.polynomial.Polynomial` objects (constant term
first).  Nothing here knows about the Poschl-Teller problem except
:func:`poschl_teller_problem`, which builds the specific instance.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import brentq

from .errors import DomainError, InconsistentParameterError, UnsupportedShapeError

__all__ = [
    "Poly",
    "degree",
    "NUProblem",
    "NUSolution",
    "Weight",
    "t_candidates",
    "radicand",
    "pi_for",
    "admissible",
    "build_solution",
    "solutions",
    "solve",
    "quantization",
    "weight_exponents",
    "weight",
    "rodrigues",
    "poschl_teller_problem",
    "quantization_root",
]

log = logging.getLogger(__name__)

Poly = Polynomial

_SQUARE_TOL = 1e-10
RODRIGUES_MAX_DEGREE = 8


def _poly(coefs) -> Polynomial:
    if isinstance(coefs, Polynomial):
        return Polynomial(coefs.coef)
    return Polynomial(np.atleast_1d(np.asarray(coefs, dtype=float)))


def coef(p: Polynomial, i: int) -> float:
    """Coefficient of ``s**i`` (zero beyond the stored length)."""
    return float(p.coef[i]) if i < len(p.coef) else 0.0


def degree(p: Polynomial) -> int:
    """Index of the highest exactly-nonzero coefficient; the zero polynomial has degree 0."""
    nz = np.flatnonzero(p.coef)
    return int(nz[-1]) if nz.size else 0


@dataclass(frozen=True)
class NUProblem:
    tau_tilde: Polynomial
    sigma: Polynomial
    sigma_tilde: Polynomial

    def __post_init__(self):
        for name, bound in (("tau_tilde", 1), ("sigma", 2), ("sigma_tilde", 2)):
            p = _poly(getattr(self, name))
            object.__setattr__(self, name, p)
            if degree(p) > bound:
                raise DomainError(f"{name} must have degree <= {bound}, got {degree(p)}")


@dataclass(frozen=True)
class NUSolution:
    t: float
    sign: int
    pi: Polynomial
    tau: Polynomial
    lam: float
    weight_exponents: tuple[float, float] | None

    @property
    def tau_slope(self) -> float:
        return coef(self.tau, 1)


def radicand(problem: NUProblem, t: float) -> Polynomial:
    """``((sigma' - tau_tilde)/2)^2 - sigma_tilde + t sigma``."""
    half = (problem.sigma.deriv() - problem.tau_tilde) / 2.0
    return half * half - problem.sigma_tilde + t * problem.sigma


def _radicand_affine(problem: NUProblem):
    """Radicand coefficients as ``c_i = base_i + slope_i * t`` for i = 0, 1, 2."""
    base = radicand(problem, 0.0)
    slope = problem.sigma
    b = [coef(base, i) for i in range(3)]
    m = [coef(slope, i) for i in range(3)]
    return b, m


def t_candidates(problem: NUProblem) -> list[float]:
    """Real values of ``t`` that make the radicand a double-root quadratic.

    Sorted ascending, duplicates merged.  An empty list (logged) means no real
    ``t`` exists, so this route yields no polynomial ``pi``.
    """
    (b0, b1, b2), (m0, m1, m2) = _radicand_affine(problem)
    # disc(t) = c1(t)^2 - 4 c2(t) c0(t) = A t^2 + B t + C
    A = m1 * m1 - 4.0 * m2 * m0
    B = 2.0 * b1 * m1 - 4.0 * (b2 * m0 + m2 * b0)
    C = b1 * b1 - 4.0 * b2 * b0
    if A == 0.0:
        if B == 0.0:
            log.warning("discriminant does not depend on t; no isolated candidates")
            return []
        return [-C / B]
    disc = B * B - 4.0 * A * C
    if disc < 0.0:
        log.warning("t quadratic has complex roots (discriminant %g)", disc)
        return []
    if disc == 0.0:
        return [-B / (2.0 * A)]
    # numerically stable pair
    q = -0.5 * (B + math.copysign(math.sqrt(disc), B))
    roots = sorted({q / A, C / q})
    return roots


def _square_root(rad: Polynomial) -> Polynomial:
    """Linear ``p s + q`` with ``(p s + q)^2 == rad`` and ``p >= 0``."""
    c0, c1, c2 = (coef(rad, i) for i in range(3))
    if degree(rad) > 2:
        raise InconsistentParameterError("radicand has degree > 2")
    scale = max(c1 * c1, abs(4.0 * c2 * c0), abs(c2), abs(c0), 1.0)
    if abs(c1 * c1 - 4.0 * c2 * c0) > _SQUARE_TOL * scale:
        raise InconsistentParameterError(
            f"radicand {rad.coef} is not a perfect square (defect {c1 * c1 - 4 * c2 * c0:.3e})"
        )
    if c2 < -_SQUARE_TOL * scale or c0 < -_SQUARE_TOL * scale:
        raise InconsistentParameterError(f"radicand {rad.coef} is negative definite")
    p = math.sqrt(max(c2, 0.0))
    if p > math.sqrt(_SQUARE_TOL * scale):
        q = c1 / (2.0 * p)
    else:
        p = 0.0
        q = math.sqrt(max(c0, 0.0))
    return Polynomial([q, p])


def pi_for(problem: NUProblem, t: float, sign: int) -> Polynomial:
    """The linear polynomial ``pi`` on branch ``sign`` (+1 or -1).

    The square root is taken with a non-negative ``s`` coefficient, so the
    ``-1`` branch is the one conventionally chosen for bound states.
    """
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    root = _square_root(radicand(problem, t))
    half = (problem.sigma.deriv() - problem.tau_tilde) / 2.0
    return _poly(half + sign * root)


def admissible(problem: NUProblem, pi: Polynomial) -> tuple[Polynomial, bool]:
    """``tau = tau_tilde + 2 pi`` and whether ``tau' < 0``."""
    tau = _poly(problem.tau_tilde + 2.0 * pi)
    return tau, coef(tau, 1) < 0.0


def build_solution(problem: NUProblem, t: float, sign: int) -> NUSolution:
    pi = pi_for(problem, t, sign)
    tau, _ = admissible(problem, pi)
    try:
        exps = weight_exponents(problem.sigma, tau)
    except UnsupportedShapeError:
        exps = None
    return NUSolution(t=t, sign=sign, pi=pi, tau=tau, lam=t + coef(pi, 1), weight_exponents=exps)


def solutions(problem: NUProblem) -> list[NUSolution]:
    """Every admissible ``(t, sign)`` branch, most negative ``tau'`` first."""
    out = []
    for t in t_candidates(problem):
        for sign in (-1, 1):
            sol = build_solution(problem, t, sign)
            if sol.tau_slope < 0.0:
                out.append(sol)
    out.sort(key=lambda sol: (sol.tau_slope, sol.t))
    return out


def solve(problem: NUProblem) -> NUSolution:
    """The admissible branch with the steepest ``tau``.

    For the Poschl-Teller problem this is the branch whose ``phi`` decays at
    ``s = 1`` when the decay exponent is positive.
    """
    found = solutions(problem)
    if not found:
        raise InconsistentParameterError("no admissible (t, pi) branch")
    return found[0]


def quantization(problem: NUProblem, solution: NUSolution, n: int) -> float:
    """``(t + pi') - (-n tau' - n(n-1) sigma''/2)``; zero on an eigenvalue."""
    sigma2 = coef(problem.sigma.deriv(2), 0) if degree(problem.sigma) >= 2 else 0.0
    rhs = -n * coef(solution.tau, 1) - 0.5 * n * (n - 1) * sigma2
    return solution.lam - rhs


# --- weight function and Rodrigues formula -------------------------------------


def _shape(sigma: Polynomial) -> tuple[str, float]:
    c0, c1, c2 = (coef(sigma, i) for i in range(3))
    if degree(sigma) > 2:
        raise UnsupportedShapeError("sigma has degree > 2")
    if c0 == 0.0 and c1 != 0.0 and c2 == -c1:
        return "beta", c1  # c s (1 - s)
    if c0 == 0.0 and c2 == 0.0 and c1 != 0.0:
        return "gamma", c1  # c s
    if c1 == 0.0 and c2 == 0.0 and c0 != 0.0:
        return "gauss", c0  # c
    raise UnsupportedShapeError(f"sigma {sigma.coef} is not c*s*(1-s), c*s or a constant")


@dataclass(frozen=True)
class Weight:
    """Solution of ``(sigma rho)' = tau rho`` up to a constant factor.

    ``kind`` is ``"beta"`` (``s^a (1-s)^b``), ``"gamma"`` (``s^a e^(b s)``)
    or ``"gauss"`` (``exp(a s + b s^2)``).
    """

    kind: str
    a: float
    b: float

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "beta":
            return s**self.a * (1.0 - s) ** self.b
        if self.kind == "gamma":
            return s**self.a * np.exp(self.b * s)
        return np.exp(self.a * s + self.b * s * s)


def weight(sigma: Polynomial, tau: Polynomial) -> Weight:
    sigma, tau = _poly(sigma), _poly(tau)
    kind, c = _shape(sigma)
    f = tau - sigma.deriv()  # rho'/rho = f / sigma
    f0, f1 = coef(f, 0), coef(f, 1)
    if degree(f) > 1:
        raise UnsupportedShapeError("tau must be at most linear")
    if kind == "beta":
        return Weight("beta", f0 / c, -(f0 + f1) / c)
    if kind == "gamma":
        return Weight("gamma", f0 / c, f1 / c)
    return Weight("gauss", f0 / c, f1 / (2.0 * c))


def weight_exponents(sigma: Polynomial, tau: Polynomial) -> tuple[float, float]:
    """``(a, b)`` with ``rho = s^a (1-s)^b`` for ``sigma`` proportional to ``s(1-s)``."""
    w = weight(sigma, tau)
    if w.kind != "beta":
        raise UnsupportedShapeError("weight exponents need sigma proportional to s(1-s)")
    return w.a, w.b


def _falling(x: float, j: int) -> float:
    out = 1.0
    for i in range(j):
        out *= x - i
    return out


def rodrigues(sigma: Polynomial, a: float, b: float, n: int) -> Polynomial:
    """``y_n = rho^-1 d^n/ds^n [sigma^n rho]`` with unit normalizing constant.

    ``(a, b)`` parametrize the weight as in :class:`Weight` for the shape of
    ``sigma``.  For ``sigma = c s(1-s)`` the result is
    ``c^n n! P_n^{(a,b)}(1 - 2s)``, returned as a :class:`Polynomial` with
    domain ``[0, 1]`` mapped onto the window ``[-1, 1]``; call ``.convert()``
    for plain coefficients in ``s``.
    """
    if int(n) != n or n < 0:
        raise DomainError("degree must be a non-negative integer")
    if n > RODRIGUES_MAX_DEGREE:
        raise DomainError(f"Rodrigues degree {n} exceeds {RODRIGUES_MAX_DEGREE}; use specfun.jacobi")
    sigma = _poly(sigma)
    kind, c = _shape(sigma)
    s = Polynomial([0.0, 1.0])
    out = Polynomial([0.0])
    if kind == "beta":
        # Leibniz on s^(n+a) (1-s)^(n+b), then divide by s^a (1-s)^b.  The
        # sum is built in the variable 2s - 1: in powers of s the
        # coefficients grow like 4^n n!^2 and cancel badly on evaluation.
        s = Polynomial.identity(domain=[0.0, 1.0], window=[-1.0, 1.0])
        out = 0.0 * s
        for j in range(n + 1):
            w = math.comb(n, j) * _falling(n + a, j) * _falling(n + b, n - j) * (-1) ** (n - j)
            out = out + w * s ** (n - j) * (1 - s) ** j
        return c**n * out
    elif kind == "gamma":
        for j in range(n + 1):
            w = math.comb(n, j) * _falling(n + a, j) * b ** (n - j)
            out = out + w * s ** (n - j)
    else:
        # d^m e^q / e^q = P_m with P_{m+1} = P_m' + q' P_m
        dq = Polynomial([a, 2.0 * b])
        out = Polynomial([1.0])
        for _ in range(n):
            out = out.deriv() + dq * out
    return _poly(c**n * out)


# --- the Poschl-Teller instance -----------------------------------------------


def poschl_teller_problem(gamma: float, delta: float, epsilon: float) -> NUProblem:
    """The hypergeometric-type form obtained with ``s = tanh^2(alpha r)``."""
    return NUProblem(
        tau_tilde=Polynomial([1.0, -3.0]),
        sigma=Polynomial([0.0, 2.0, -2.0]),
        sigma_tilde=Polynomial([-gamma, gamma + delta - epsilon**2, -delta]),
    )


def quantization_root(gamma: float, delta: float, n: int, eps_max: float | None = None) -> float:
    """Positive decay exponent solving the quantization condition for level ``n``.

    The residual is evaluated on the branch picked by :func:`solve` and its
    sign change is located with Brent's method.
    """

    def residual(eps):
        problem = poschl_teller_problem(gamma, delta, eps)
        return quantization(problem, solve(problem), n)

    hi = eps_max if eps_max is not None else math.sqrt(1.0 + 4.0 * delta) + 1.0
    lo = 1e-12
    if residual(lo) * residual(hi) > 0:
        raise DomainError(f"no positive root of the quantization condition for n={n}")
    return brentq(residual, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)
