"""Closed-form energy levels, the critical screening parameter and level counts.

With ``B = sqrt(1 + 8 mu V0 / (hbar alpha)^2) - (D + 2 ell + 4 n_r)`` the
bound levels are

    E = -hbar^2 alpha^2 B^2 / (8 mu),    B > 0,

so they depend on ``(n_r, ell)`` only through the principal number
``n = 2 n_r + ell``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NoBoundStateError
from .model import PhysicalParams, StateLabel, reduce

__all__ = [
    "EnergyLevel",
    "EnergyRow",
    "bracket",
    "bracket_principal",
    "energy",
    "energy_principal",
    "critical_alpha",
    "count_bound_states",
    "figure1_data",
]


@dataclass(frozen=True)
class EnergyLevel:
    state: StateLabel
    energy: float
    epsilon: float


def bracket(params: PhysicalParams, state: StateLabel) -> float:
    """``sqrt(1 + 4 delta) - k - 4 n_r``, twice the decay exponent."""
    return 2.0 * reduce(params, state).epsilon


def bracket_principal(params: PhysicalParams, n: int, D: int) -> float:
    """``sqrt(1 + 8 mu V0 / (hbar alpha)^2) - (2n + D)``."""
    _check_nD(n, D)
    delta = 2.0 * params.mu * params.V0 / (params.hbar * params.alpha) ** 2
    return math.sqrt(1.0 + 4.0 * delta) - (2 * n + D)


def _check_nD(n, D):
    if int(n) != n or n < 0:
        raise DomainError(f"n must be an integer >= 0, got {n!r}")
    if int(D) != D or D < 1:
        raise DomainError(f"D must be an integer >= 1, got {D!r}")


def _level(params: PhysicalParams, b: float, what: str) -> float:
    if not b > 0.0:
        raise NoBoundStateError(f"{what} is not bound (bracket {b:.6g} <= 0)", b)
    return -(params.hbar * params.alpha * b) ** 2 / (8.0 * params.mu)


def energy(params: PhysicalParams, state: StateLabel) -> EnergyLevel:
    """Bound-state energy of ``state``; raises :class:`NoBoundStateError` otherwise."""
    b = bracket(params, state)
    E = _level(params, b, f"state {state}")
    return EnergyLevel(state=state, energy=E, epsilon=0.5 * b)


def energy_principal(params: PhysicalParams, n: int, D: int) -> float:
    """Energy indexed by the principal number ``n = 2 n_r + ell``.

    For ``D = 1`` this also labels the odd states ``n = 1, 3, ...`` that the
    radial labelling (``ell = 0``, even ``n`` only) never reaches.
    """
    return _level(params, bracket_principal(params, n, D), f"level n={n}, D={D}")


def critical_alpha(n: int, D: int, V0: float = 1.0, mu: float = 1.0, hbar: float = 1.0) -> float:
    """Range parameter at which level ``(n, D)`` reaches zero energy.

    Above it the level is unbound.  The one-dimensional ground state
    (``n = 0, D = 1``) is bound for every alpha, so no critical value exists.
    """
    _check_nD(n, D)
    if not all(x > 0 and math.isfinite(x) for x in (V0, mu, hbar)):
        raise DomainError("V0, mu and hbar must be positive and finite")
    denom = (2 * n + D) ** 2 - 1
    if denom == 0:
        raise DomainError("n = 0, D = 1 is bound for every alpha: no critical value")
    return math.sqrt(8.0 * mu * V0 / (hbar**2 * denom))


def count_bound_states(params: PhysicalParams, D: int, ell: int) -> int:
    """Number of ``n_r >= 0`` with a strictly positive bracket."""
    root = math.sqrt(1.0 + 8.0 * params.mu * params.V0 / (params.hbar * params.alpha) ** 2)
    k = StateLabel(D, ell).k
    count = 0
    while root - k - 4 * count > 0.0:
        count += 1
    return count


@dataclass(frozen=True)
class EnergyRow:
    """One cell of the ``E(alpha)`` table; ``energy`` is None when unbound."""

    D: int
    n: int
    alpha: float
    energy: float | None

    @property
    def bound(self) -> bool:
        return self.energy is not None


def figure1_data(
    D_list, n_list, alpha_grid, V0: float = 1.0, mu: float = 1.0, hbar: float = 1.0
) -> list[EnergyRow]:
    """Principal-indexed energies over a grid, ordered by D, then n, then alpha.

    Unbound cells are kept, with ``energy=None``.
    """
    alphas = sorted(float(a) for a in alpha_grid)
    if any(not a > 0 for a in alphas):
        raise DomainError("alpha grid values must be positive")
    rows = []
    for D in sorted(D_list):
        for n in sorted(n_list):
            for a in alphas:
                params = PhysicalParams(V0, a, mu, hbar)
                b = bracket_principal(params, n, D)
                rows.append(EnergyRow(D, n, a, _level(params, b, "") if b > 0 else None))
    return rows
