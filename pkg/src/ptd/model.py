"""Physical parameters, quantum numbers and the dimensionless reduction.

The hyperradial equation for the well ``V(r) = -V0 / cosh^2(alpha r)`` in
``D`` dimensions is

    R'' + [2 mu / hbar^2 (E - V(r)) - gamma / r^2] R = 0,
    gamma = (k - 1)(k - 3) / 4,   k = D + 2 ell,

and the solvable model replaces ``1/r^2`` by ``alpha^2 / sinh^2(alpha r)``.
Everything downstream works with the reduced numbers collected in
:class:`ReducedParams`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "PhysicalParams",
    "StateLabel",
    "ReducedParams",
    "reduce",
    "is_bound",
    "potential_value",
    "centrifugal_pair",
]


@dataclass(frozen=True)
class PhysicalParams:
    """Well depth ``V0``, range ``alpha``, reduced mass ``mu`` and ``hbar``."""

    V0: float
    alpha: float
    mu: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("V0", "alpha", "mu", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")

    def with_alpha(self, alpha: float) -> "PhysicalParams":
        return PhysicalParams(self.V0, alpha, self.mu, self.hbar)

    def with_V0(self, V0: float) -> "PhysicalParams":
        return PhysicalParams(V0, self.alpha, self.mu, self.hbar)

    @property
    def energy_unit(self) -> float:
        """``hbar^2 alpha^2 / (2 mu)``, the natural energy scale of the well."""
        return self.hbar**2 * self.alpha**2 / (2.0 * self.mu)


@dataclass(frozen=True)
class StateLabel:
    """Quantum numbers ``(D, ell, n_r)`` of a hyperradial state."""

    D: int
    ell: int = 0
    n_r: int = 0

    def __post_init__(self):
        for name, low in (("D", 1), ("ell", 0), ("n_r", 0)):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < low:
                raise DomainError(f"{name} must be an integer >= {low}, got {value!r}")
            object.__setattr__(self, name, int(value))

    @property
    def n(self) -> int:
        """Principal quantum number ``2 n_r + ell``."""
        return 2 * self.n_r + self.ell

    @property
    def k(self) -> int:
        return self.D + 2 * self.ell


@dataclass(frozen=True)
class ReducedParams:
    k: int
    beta: float
    gamma: float
    delta: float
    v: float
    epsilon: float

    @property
    def bound(self) -> bool:
        return self.epsilon > 0.0


def reduce(params: PhysicalParams, state: StateLabel) -> ReducedParams:
    """Dimensionless quantities for ``state`` in the well ``params``.

    ``epsilon`` is the decay exponent, ``E = -hbar^2 alpha^2 epsilon^2 / (2 mu)``.
    It is returned even when it is not positive; use :func:`is_bound`.

    The regular solution at the origin behaves as ``R ~ r^((k-1)/2)``, so the
    indicial root enters as the signed ``k - 2`` rather than
    ``sqrt(1 + 4 gamma) = |k - 2|``.  The two differ only for ``k = 1``,
    where the signed form selects the even one-dimensional states.
    """
    k = state.k
    gamma = (k - 1) * (k - 3) / 4.0
    delta = 2.0 * params.mu * params.V0 / (params.hbar * params.alpha) ** 2
    epsilon = 0.5 * (math.sqrt(1.0 + 4.0 * delta) - k - 4 * state.n_r)
    return ReducedParams(
        k=k,
        beta=float(state.ell * (state.ell + state.D - 2)),
        gamma=gamma,
        delta=delta,
        v=(k - 1) / 2.0,
        epsilon=epsilon,
    )


def is_bound(params: PhysicalParams, state: StateLabel) -> bool:
    """True iff the decay exponent is strictly positive (threshold is unbound)."""
    return reduce(params, state).epsilon > 0.0


def potential_value(params: PhysicalParams, r):
    """``-V0 / cosh^2(alpha r)``; accepts scalars or arrays, ``r >= 0``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("r must be non-negative")
    x = params.alpha * r
    # sech^2 x = 4 e^{-2x} / (1 + e^{-2x})^2 stays finite for large x
    e = np.exp(-2.0 * x)
    out = -params.V0 * 4.0 * e / (1.0 + e) ** 2
    return out[()] if out.ndim == 0 else out


def centrifugal_pair(params: PhysicalParams, r):
    """Return ``(1/r^2, alpha^2/sinh^2(alpha r))`` for ``r > 0``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("centrifugal terms are singular at r = 0")
    exact = 1.0 / r**2
    # 1/sinh^2 z = 4 e^{-2z} / (1 - e^{-2z})^2 underflows to 0 instead of overflowing
    e = np.exp(-2.0 * params.alpha * r)
    approx = params.alpha**2 * 4.0 * e / (-np.expm1(-2.0 * params.alpha * r)) ** 2
    if exact.ndim == 0:
        return exact[()], approx[()]
    return exact, approx
