"""Hyperradial eigenfunctions in the variable ``s = tanh^2(alpha r)``.

A bound state with decay exponent ``eps`` and ``v = (k - 1)/2`` is

    R(s) = C s^(v/2) (1 - s)^(eps/2) P_{n_r}^{(v - 1/2, eps)}(1 - 2s),

which behaves as ``r^v = r^(ell + (D-1)/2)`` at the origin and as
``exp(-eps alpha r)`` far out.  The weight of the polynomial part is
``s^(v - 1/2) (1 - s)^eps``; this is what the Rodrigues construction gives
for ``sigma = 2 s (1 - s)`` and the admissible ``tau``, and it is the only
choice for which ``R`` solves the radial equation when ``n_r >= 1``.

The ``"as-printed"`` mode keeps the historical closed form
``s^(2v) (1 - s)^(eps/2) P_{n_r}^{(v, eps)}(1 - 2s)`` with its matching
normalization.  It does not solve the equation and exists so that the
failure can be demonstrated.

Normalization uses ``dr = ds / (2 alpha sqrt(s) (1 - s))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DivergentNormError, DomainError, NoBoundStateError
from .model import PhysicalParams, ReducedParams, StateLabel, reduce
from .quadrature import integrate_unit
from .specfun import beta, jacobi, jacobi_derivative, pochhammer

__all__ = [
    "CORRECTED",
    "AS_PRINTED",
    "RadialSolution",
    "RadialProfile",
    "radial_solution",
    "radial_s",
    "radial_r",
    "radial_r_derivative",
    "hyperradial_u",
    "normalization_series",
    "normalization_quadrature",
    "ode_residual",
    "small_r_slope",
    "node_count",
    "overlap",
    "default_r_grid",
    "figure_profiles",
    "profile_maximum",
]

CORRECTED = "corrected"
AS_PRINTED = "as-printed"
_MODES = (CORRECTED, AS_PRINTED)


@dataclass(frozen=True)
class _Shape:
    """``R = C s^(p/2) (1-s)^(eps/2) P_n^{(a, b)}(1 - 2s)``, ``b = eps``."""

    p: float
    a: float
    b: float
    n: int

    @property
    def x0(self) -> float:
        """First Beta argument of the norm integral, ``p + 1/2``."""
        return self.p + 0.5


def _shape(reduced: ReducedParams, n_r: int, mode: str) -> _Shape:
    if mode == CORRECTED:
        return _Shape(p=reduced.v, a=reduced.v - 0.5, b=reduced.epsilon, n=n_r)
    if mode == AS_PRINTED:
        return _Shape(p=4.0 * reduced.v, a=reduced.v, b=reduced.epsilon, n=n_r)
    raise DomainError(f"exponent mode must be one of {_MODES}, got {mode!r}")


def _bound_reduced(params: PhysicalParams, state: StateLabel) -> ReducedParams:
    red = reduce(params, state)
    if not red.epsilon > 0.0:
        raise DivergentNormError(
            f"state {state} is not bound (eps = {red.epsilon:.6g}); its norm diverges"
        )
    return red


# --- normalization -------------------------------------------------------------


def _series_sum(sh: _Shape) -> float:
    """``sum_k sum_j A_k A_j B(x0+k+j, eps) / B(x0, eps)`` in nested Pochhammer form."""
    n, a, b, x0 = sh.n, sh.a, sh.b, sh.x0
    top = n + a + b + 1.0

    def coeff(k):
        return pochhammer(-n, k) * pochhammer(top, k) / (pochhammer(a + 1.0, k) * math.factorial(k))

    total = 0.0
    for k in range(n + 1):
        inner = 0.0
        for j in range(n + 1):
            inner += coeff(j) * pochhammer(x0 + k, j) / pochhammer(x0 + b + k, j)
        total += coeff(k) * pochhammer(x0, k) / pochhammer(x0 + b, k) * inner
    return total


def normalization_series(params: PhysicalParams, state: StateLabel, mode: str = CORRECTED) -> float:
    """Normalization constant from the terminating double series.

    Expanding ``P_n^{(a,b)}(1-2s) = (a+1)_n/n! 2F1(-n, n+a+b+1; a+1; s)``
    turns the norm integral into Beta functions
    ``B(x0 + k + j, eps) = B(x0, eps) (x0)_{k+j} / (x0 + eps)_{k+j}``, so

        C^2 N B(x0, eps) S = 2 alpha,   N = [(a+1)_n / n!]^2.

    For ``n_r = 0`` in corrected mode this is ``C0 = sqrt(2 alpha / B(v + 1/2, eps))``.
    """
    red = _bound_reduced(params, state)
    sh = _shape(red, state.n_r, mode)
    N = (pochhammer(sh.a + 1.0, sh.n) / math.factorial(sh.n)) ** 2
    S = _series_sum(sh)
    return math.sqrt(2.0 * params.alpha / (N * beta(sh.x0, sh.b) * S))


def _poly_part(sh: _Shape, s, c):
    # 1 - 2s written as c - s keeps precision near both ends
    return jacobi(sh.n, sh.a, sh.b, c - s)


def normalization_quadrature(
    params: PhysicalParams, state: StateLabel, mode: str = CORRECTED, rel_tol: float = 1e-12
) -> float:
    """Normalization constant from adaptive quadrature of the unnormalized density.

    The integrand ``s^(p - 1/2) (1-s)^(eps - 1) P^2 / (2 alpha)`` has power-law
    singularities at both ends, handled by dyadic endpoint refinement.
    """
    red = _bound_reduced(params, state)
    sh = _shape(red, state.n_r, mode)

    def density(s, c):
        return s ** (sh.p - 0.5) * c ** (sh.b - 1.0) * _poly_part(sh, s, c) ** 2

    integral = integrate_unit(density, rel_tol=rel_tol) / (2.0 * params.alpha)
    return 1.0 / math.sqrt(integral)


# --- solutions -------------------------------------------------------------------


@dataclass(frozen=True)
class RadialSolution:
    """A normalized (in its own mode) hyperradial eigenfunction."""

    params: PhysicalParams
    state: StateLabel
    reduced: ReducedParams
    norm_constant: float
    exponent_mode: str = CORRECTED

    @property
    def shape(self) -> _Shape:
        return _shape(self.reduced, self.state.n_r, self.exponent_mode)

    @property
    def energy(self) -> float:
        p = self.params
        return -((p.hbar * p.alpha * self.reduced.epsilon) ** 2) / (2.0 * p.mu)


def radial_solution(
    params: PhysicalParams, state: StateLabel, mode: str = CORRECTED, norm: str = "series"
) -> RadialSolution:
    """Build the eigenfunction of ``state``; ``norm`` is ``"series"`` or ``"quadrature"``."""
    if mode not in _MODES:
        raise DomainError(f"exponent mode must be one of {_MODES}, got {mode!r}")
    red = reduce(params, state)
    if not red.epsilon > 0.0:
        raise NoBoundStateError(f"state {state} is not bound", 2.0 * red.epsilon)
    if norm == "series":
        C = normalization_series(params, state, mode)
    elif norm == "quadrature":
        C = normalization_quadrature(params, state, mode)
    else:
        raise DomainError(f"norm must be 'series' or 'quadrature', got {norm!r}")
    return RadialSolution(params, state, red, C, mode)


def _unwrap(x):
    return x[()] if np.ndim(x) == 0 else x


def _R_of(sol: RadialSolution, s, c):
    sh = sol.shape
    return sol.norm_constant * s ** (0.5 * sh.p) * c ** (0.5 * sh.b) * _poly_part(sh, s, c)


def _dR_dr_of(sol: RadialSolution, s, c):
    """``dR/dr = alpha C s^((p-1)/2) c^(eps/2) [p c P - eps s P - 4 s c P']``."""
    sh = sol.shape
    P = _poly_part(sh, s, c)
    dP = jacobi_derivative(sh.n, sh.a, sh.b, c - s)
    rest = s ** (0.5 * (sh.p + 1.0)) * (-sh.b * P - 4.0 * c * dP)
    if sh.p != 0.0:
        rest = rest + sh.p * c * P * s ** (0.5 * (sh.p - 1.0))
    return sol.params.alpha * sol.norm_constant * c ** (0.5 * sh.b) * rest


def radial_s(sol: RadialSolution, s):
    """``R`` as a function of ``s`` in ``(0, 1)``."""
    s = np.asarray(s, dtype=float)
    if np.any((s <= 0.0) | (s >= 1.0)):
        raise DomainError("s must lie strictly inside (0, 1)")
    return _unwrap(_R_of(sol, s, 1.0 - s))


def _s_pair(alpha, r):
    """``(tanh^2(alpha r), sech^2(alpha r))`` without overflow."""
    z = alpha * r
    e = np.exp(-2.0 * z)
    t = np.tanh(z)
    return t * t, 4.0 * e / (1.0 + e) ** 2


def radial_r(sol: RadialSolution, r):
    """``R(r)`` for ``r >= 0``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0):
        raise DomainError("r must be non-negative")
    s, c = _s_pair(sol.params.alpha, r)
    return _unwrap(_R_of(sol, s, c))


def radial_r_derivative(sol: RadialSolution, r):
    """``dR/dr`` for ``r > 0``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("r must be positive")
    s, c = _s_pair(sol.params.alpha, r)
    return _unwrap(_dR_dr_of(sol, s, c))


def hyperradial_u(sol: RadialSolution, r):
    """``U(r) = r^(-(D-1)/2) R(r)`` for ``r > 0``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("r must be positive")
    return _unwrap(r ** (-0.5 * (sol.state.D - 1)) * np.asarray(radial_r(sol, r)))


# --- diagnostics -----------------------------------------------------------------


def ode_residual(sol: RadialSolution, s, h: float = 1e-4):
    """Residual of ``sigma^2 R'' + sigma tau_t R' + sigma_t R`` in the variable ``s``.

    Here ``sigma = 2s(1-s)``, ``tau_t = 1 - 3s`` and
    ``sigma_t = -delta s^2 + (gamma + delta - eps^2) s - gamma``.  Derivatives
    are central differences with steps ``h`` and ``2h``, combined by
    Richardson extrapolation so the truncation error is ``O(h^4)``.
    """
    s = np.asarray(s, dtype=float)
    if np.any((s - 2 * h <= 0.0) | (s + 2 * h >= 1.0)):
        raise DomainError("sample points must stay 2h inside (0, 1)")
    red = sol.reduced

    def R(x):
        return _R_of(sol, x, 1.0 - x)

    f0 = R(s)
    fp1, fm1, fp2, fm2 = R(s + h), R(s - h), R(s + 2 * h), R(s - 2 * h)
    d1 = (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h)
    d2 = (16.0 * (fp1 + fm1) - (fp2 + fm2) - 30.0 * f0) / (12.0 * h * h)
    sigma = 2.0 * s * (1.0 - s)
    sigma_t = -red.delta * s * s + (red.gamma + red.delta - red.epsilon**2) * s - red.gamma
    return _unwrap(sigma * sigma * d2 + sigma * (1.0 - 3.0 * s) * d1 + sigma_t * f0)


def small_r_slope(sol: RadialSolution, r0: float | None = None) -> float:
    """``d log|R| / d log r`` near the origin, from two points a factor 2 apart."""
    r0 = r0 if r0 is not None else 1e-4 / sol.params.alpha
    R1, R2 = abs(radial_r(sol, r0)), abs(radial_r(sol, 2.0 * r0))
    return math.log(R2 / R1) / math.log(2.0)


def node_count(sol: RadialSolution, samples: int = 4001) -> int:
    """Sign changes of ``R`` on an interior grid in ``s``."""
    s = np.linspace(0.0, 1.0, samples + 2)[1:-1]
    sign = np.sign(radial_s(sol, s))
    sign = sign[sign != 0]
    return int(np.count_nonzero(sign[1:] != sign[:-1]))


def overlap(a: RadialSolution, b: RadialSolution, rel_tol: float = 1e-12) -> float:
    """``int_0^inf R_a R_b dr`` for two solutions of the same well."""
    if a.params != b.params:
        raise DomainError("overlap needs both solutions in the same well")
    alpha = a.params.alpha

    def f(s, c):
        return _R_of(a, s, c) * _R_of(b, s, c) / (2.0 * alpha * np.sqrt(s) * c)

    return integrate_unit(f, rel_tol=rel_tol)


# --- profiles ----------------------------------------------------------------------


@dataclass(frozen=True)
class RadialProfile:
    """``|U(r)|`` sampled on a strictly increasing grid with ``r > 0``."""

    state: StateLabel
    alpha: float
    r: np.ndarray
    value: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        if r.ndim != 1 or r.size == 0 or r[0] <= 0 or np.any(np.diff(r) <= 0):
            raise DomainError("profile grid must be strictly increasing with r > 0")

    @property
    def samples(self):
        return list(zip(self.r.tolist(), self.value.tolist()))


def default_r_grid(alpha: float, points: int = 200, r_max: float | None = None) -> np.ndarray:
    """Uniform grid on ``(0, r_max]``, ``r_max = 10/alpha`` by default."""
    r_max = r_max if r_max is not None else 10.0 / alpha
    return np.linspace(r_max / points, r_max, points)


def figure_profiles(states, params: PhysicalParams, grid=None, mode: str = CORRECTED):
    """Normalized ``|U(r)|`` for each state, in the given order."""
    grid = default_r_grid(params.alpha) if grid is None else np.asarray(grid, dtype=float)
    out = []
    for st in states:
        sol = radial_solution(params, st, mode)
        out.append(RadialProfile(st, params.alpha, grid, np.abs(hyperradial_u(sol, grid))))
    return out


def profile_maximum(sol: RadialSolution) -> float:
    """Location of the outermost maximum of ``|U(r)|``, located to ~1e-10 relative.

    A coarse scan brackets the last interior maximum, then a bounded scalar
    search refines it.
    """
    alpha = sol.params.alpha
    eps = sol.reduced.epsilon
    r_far = (40.0 + 40.0 / eps) / alpha
    r = np.linspace(r_far / 4000, r_far, 4000)
    u = np.abs(hyperradial_u(sol, r))
    i = int(np.argmax(u)) if sol.state.n_r == 0 else _last_peak(u)
    lo, hi = r[max(i - 1, 0)], r[min(i + 1, len(r) - 1)]
    res = minimize_scalar(
        lambda x: -abs(hyperradial_u(sol, x)), bounds=(lo, hi), method="bounded",
        options={"xatol": 1e-12 * hi},
    )
    return float(res.x)


def _last_peak(u: np.ndarray) -> int:
    peaks = np.flatnonzero((u[1:-1] > u[:-2]) & (u[1:-1] >= u[2:])) + 1
    return int(peaks[-1]) if peaks.size else int(np.argmax(u))
