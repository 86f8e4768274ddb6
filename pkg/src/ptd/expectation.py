"""Hellmann-Feynman expectation values and their quadrature counterparts.

Differentiating the closed-form energy with respect to ``ell`` and ``V0``
gives, with ``B`` the positive bracket (twice the decay exponent),

    <alpha^2 / sinh^2(alpha r)> = alpha^2 B / (k - 2),
    <V> = -V0 B / sqrt(1 + 8 mu V0 / (hbar alpha)^2),

and ``<T> = E - <V>``.  The ``ell``-derivative acts on the approximated
centrifugal term, so the first identity is exact for ``alpha^2/sinh^2`` and
only approximate for ``1/r^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentNormError, DomainError, InapplicableError, NoBoundStateError
from .model import PhysicalParams, StateLabel, reduce
from .quadrature import integrate_adaptive, integrate_unit
from .spectrum import energy
from .specfun import jacobi, jacobi_derivative
from .wavefunction import _R_of, radial_r, radial_solution

__all__ = [
    "OBSERVABLES",
    "ExpectationReport",
    "inv_r2_hft",
    "potential_hft",
    "kinetic",
    "expectation_quadrature",
    "expectation_report",
]

OBSERVABLES = ("inv_r2", "sinh_centrifugal", "potential", "kinetic")


def _bracket(params: PhysicalParams, state: StateLabel) -> float:
    b = 2.0 * reduce(params, state).epsilon
    if not b > 0.0:
        raise NoBoundStateError(f"state {state} is not bound", b)
    return b


def inv_r2_hft(params: PhysicalParams, state: StateLabel) -> float:
    """``alpha^2 B / (2 ell + D - 2)``; undefined when the divisor is not positive."""
    divisor = state.k - 2
    if divisor <= 0:
        raise InapplicableError(f"2*ell + D - 2 = {divisor} <= 0: formula does not apply")
    return params.alpha**2 * _bracket(params, state) / divisor


def potential_hft(params: PhysicalParams, state: StateLabel) -> float:
    """``<V>`` from ``dE/dV0 = <V>/V0``; always negative for a bound state."""
    b = _bracket(params, state)
    root = math.sqrt(1.0 + 8.0 * params.mu * params.V0 / (params.hbar * params.alpha) ** 2)
    return -params.V0 * b / root


def kinetic(params: PhysicalParams, state: StateLabel) -> float:
    """``<T> = E - <V>`` (the centrifugal energy is part of ``T``)."""
    return energy(params, state).energy - potential_hft(params, state)


def expectation_quadrature(
    params: PhysicalParams, state: StateLabel, observable: str, rel_tol: float = 1e-12
) -> float:
    """``int_0^inf f(r) R(r)^2 dr`` for the normalized corrected eigenfunction.

    ``observable`` selects ``f``: ``"inv_r2"`` is ``1/r^2``,
    ``"sinh_centrifugal"`` is ``alpha^2/sinh^2(alpha r)``, ``"potential"`` is
    the well itself and ``"kinetic"`` is the kinetic-plus-centrifugal energy,
    evaluated as ``hbar^2/(2 mu) int (R'^2 + gamma alpha^2/sinh^2 R^2) dr``
    plus the surface term that appears at the origin when ``k = 2``.
    """
    if observable not in OBSERVABLES:
        raise DomainError(f"observable must be one of {OBSERVABLES}, got {observable!r}")
    sol = radial_solution(params, state)
    a = params.alpha
    if observable in ("inv_r2", "sinh_centrifugal") and state.k <= 2:
        # density ~ r^(k-1) at the origin, so r^-2 R^2 ~ r^(k-3) is not integrable
        raise DivergentNormError(f"<{observable}> diverges at the origin for k = {state.k}")

    def measure(s, c):
        return 1.0 / (2.0 * a * np.sqrt(s) * c)

    if observable == "inv_r2":
        # In s the factor 1/r^2 = alpha^2 / artanh(sqrt(s))^2 is logarithmic at
        # s = 1, which defeats the power-law tail model; integrate in r instead,
        # up to where exp(-2 eps alpha r) is far below double precision.
        r_end = (10.0 + 40.0 / sol.reduced.epsilon) / a
        return float(integrate_adaptive(
            lambda r: radial_r(sol, r) ** 2 / (r * r), 0.0, r_end, rel_tol=rel_tol
        ))
    if observable == "sinh_centrifugal":
        def f(s, c):
            # alpha^2 / sinh^2 = alpha^2 (1 - s) / s
            return a * a * c / s * _R_of(sol, s, c) ** 2 * measure(s, c)
    elif observable == "potential":
        def f(s, c):
            return -params.V0 * c * _R_of(sol, s, c) ** 2 * measure(s, c)
    else:
        scale = params.hbar**2 / (2.0 * params.mu)
        sh = sol.shape
        pw = sh.p
        amp = scale * (a * sol.norm_constant) ** 2

        def f(s, c):
            # R' = alpha C s^((p-1)/2) c^(eps/2) (p c P + s Q),  Q = -eps P - 4 c P'
            # and gamma = p (p - 1), so R'^2 + gamma alpha^2 c/s R^2 is
            # alpha^2 C^2 s^(p-1) c^eps [p c (2p - 1 - p s) P^2 + 2 p c s P Q + s^2 Q^2];
            # writing it this way cancels the 1/s pieces exactly when k = 2.
            P = jacobi(sh.n, sh.a, sh.b, c - s)
            Q = -sh.b * P - 4.0 * c * jacobi_derivative(sh.n, sh.a, sh.b, c - s)
            core = pw * c * ((2.0 * pw - 1.0 - pw * s) * P * P + 2.0 * s * P * Q) + s * s * Q * Q
            return amp * s ** (pw - 1.0) * c**sh.b * core * measure(s, c)

    value = float(integrate_unit(f, rel_tol=rel_tol))
    if observable == "kinetic" and state.k == 2:
        # R ~ C P(1) sqrt(alpha r): -int R R'' = int R'^2 + R R'|_{r=0}
        sh = sol.shape
        P1 = math.gamma(sh.a + 1.0 + sh.n) / (math.gamma(sh.a + 1.0) * math.factorial(sh.n))
        value += params.hbar**2 / (2.0 * params.mu) * sol.norm_constant**2 * P1**2 * a / 2.0
    return value


@dataclass(frozen=True)
class ExpectationReport:
    """HFT values and quadrature counterparts; ``None`` marks an inapplicable entry."""

    state: StateLabel
    energy: float
    inv_r2_hft: float | None
    potential_hft: float
    kinetic: float
    sinh_centrifugal_quad: float | None
    inv_r2_quad: float | None
    potential_quad: float
    kinetic_quad: float


def expectation_report(params: PhysicalParams, state: StateLabel) -> ExpectationReport:
    E = energy(params, state).energy
    applicable = state.k > 2
    return ExpectationReport(
        state=state,
        energy=E,
        inv_r2_hft=inv_r2_hft(params, state) if applicable else None,
        potential_hft=potential_hft(params, state),
        kinetic=kinetic(params, state),
        sinh_centrifugal_quad=(
            expectation_quadrature(params, state, "sinh_centrifugal") if applicable else None
        ),
        inv_r2_quad=expectation_quadrature(params, state, "inv_r2") if applicable else None,
        potential_quad=expectation_quadrature(params, state, "potential"),
        kinetic_quad=expectation_quadrature(params, state, "kinetic"),
    )
