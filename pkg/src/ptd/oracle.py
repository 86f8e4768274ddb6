"""Independent Numerov shooting solver for the hyperradial equation.

Solves

    R'' = [2 mu / hbar^2 (V(r) - E) + gamma c(r)] R,   gamma = (k-1)(k-3)/4,

with ``c(r) = 1/r^2`` (``exact_centrifugal``) or ``alpha^2/sinh^2(alpha r)``
(``approx_centrifugal``).  Nothing in this module uses the closed-form
spectrum; it exists to check it.

The equation is integrated on a uniform grid in ``x`` with
``r = e^x - shift`` and ``R = sqrt(r + shift) y``, which turns it into
``y'' = g(x) y`` with ``g = (r + shift)^2 F(r) + 1/4``.  For ``k >= 2`` the
shift is zero: the grid is logarithmic, the power law at the origin becomes
a smooth exponential in ``x`` and the regular solution is the dominant one.
For ``k = 1`` (no centrifugal term, ``R ~ 1`` at the origin) the regular
solution would be recessive on a log grid, so the grid starts at ``r = 0``
with ``shift = 1/alpha``: uniform near the origin, logarithmic far out.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit
from scipy.optimize import brentq

from .errors import DomainError, EigenvalueNotFoundError
from .model import PhysicalParams

__all__ = [
    "EXACT",
    "APPROX",
    "RadialODE",
    "EigenResult",
    "integrate_numerov",
    "count_nodes",
    "find_eigenvalue",
    "bound_state_count",
]

EXACT = "exact_centrifugal"
APPROX = "approx_centrifugal"

_RESCALE = 1e150
_TAIL = 30.0


@njit(cache=True)
def _fill(g, h, y0, y1, stop):
    """Numerov sweep ``y[0..stop]`` for ``y'' = g y``; the prefix is rescaled on growth."""
    y = np.empty(stop + 1)
    y[0] = y0
    y[1] = y1
    c = h * h / 12.0
    for i in range(1, stop):
        y[i + 1] = (2.0 * (1.0 + 5.0 * c * g[i]) * y[i] - (1.0 - c * g[i - 1]) * y[i - 1]) / (
            1.0 - c * g[i + 1]
        )
        if abs(y[i + 1]) > _RESCALE:
            for j in range(i + 2):
                y[j] /= _RESCALE
    return y


@njit(cache=True)
def _count(g, h, y0, y1):
    """Sign changes of the outward solution over the whole grid."""
    c = h * h / 12.0
    a, b = y0, y1
    nodes = 0
    for i in range(1, g.shape[0] - 1):
        nxt = (2.0 * (1.0 + 5.0 * c * g[i]) * b - (1.0 - c * g[i - 1]) * a) / (1.0 - c * g[i + 1])
        if (nxt < 0.0 and b > 0.0) or (nxt > 0.0 and b < 0.0) or (nxt == 0.0 and b != 0.0):
            nodes += 1
        a, b = b, nxt
        if abs(b) > _RESCALE:
            a /= _RESCALE
            b /= _RESCALE
    return nodes


@dataclass(frozen=True)
class RadialODE:
    """Hyperradial equation for fixed ``(D, ell)`` on a log grid.

    The default grid spans ``r_min = 1e-5/alpha`` (``0`` when ``k = 1``) to
    ``r_max = max(20/alpha, 20/kappa_min)`` with 40000 points, where
    ``kappa_min`` belongs to the shallowest energy the solver will consider,
    ``-eps_floor^2 hbar^2 alpha^2 / (2 mu)``.  States with a decay exponent
    below ``eps_floor`` are treated as unbound.
    """

    params: PhysicalParams
    D: int
    ell: int
    mode: str = APPROX
    points: int = 40000
    eps_floor: float = 0.01
    r_min: float | None = None
    r_max: float | None = None
    x: np.ndarray = field(init=False, repr=False, compare=False)
    shift: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.mode not in (EXACT, APPROX):
            raise DomainError(f"unknown centrifugal mode {self.mode!r}")
        if self.D < 1 or self.ell < 0:
            raise DomainError("need D >= 1 and ell >= 0")
        p = self.params
        shifted = self.D + 2 * self.ell == 1
        if self.r_min is not None:
            r_min = self.r_min
        else:
            r_min = 0.0 if shifted else 1e-5 / p.alpha
        shift = 1.0 / p.alpha if shifted else 0.0
        kappa_min = self.eps_floor * p.alpha
        r_max = self.r_max if self.r_max is not None else max(20.0 / p.alpha, 20.0 / kappa_min)
        if not (0 <= r_min < r_max and (r_min > 0 or shift > 0)):
            raise DomainError("need 0 < r_min < r_max (r_min = 0 allowed only for k = 1)")
        object.__setattr__(self, "r_min", r_min)
        object.__setattr__(self, "r_max", r_max)
        object.__setattr__(self, "shift", shift)
        x = np.linspace(math.log(r_min + shift), math.log(r_max + shift), self.points)
        object.__setattr__(self, "x", x)

    @property
    def k(self) -> int:
        return self.D + 2 * self.ell

    @property
    def gamma(self) -> float:
        return (self.k - 1) * (self.k - 3) / 4.0

    @property
    def h(self) -> float:
        return self.x[1] - self.x[0]

    @property
    def r(self) -> np.ndarray:
        r = np.exp(self.x) - self.shift
        if self.shift:
            r[0] = self.r_min
        return r

    @property
    def e_top(self) -> float:
        """Shallowest trial energy."""
        return -self.eps_floor**2 * self.params.energy_unit

    def _r2c(self, r):
        """``r^2 c(r)``."""
        if self.mode == EXACT:
            return np.ones_like(r)
        z = self.params.alpha * r
        out = np.ones_like(z)
        big = z > 1e-4
        zb = z[big]
        # (z / sinh z)^2 = 4 z^2 e^{-2z} / (1 - e^{-2z})^2, overflow-free
        e = np.exp(-2.0 * zb)
        out[big] = 4.0 * zb * zb * e / (1.0 - e) ** 2
        zs = z[~big]
        out[~big] = 1.0 - zs * zs / 3.0
        return out

    def g(self, E: float) -> np.ndarray:
        """``g(x)`` on the grid truncated where the tail has decayed by ``e^-30``.

        Past the outer turning point the solution falls like ``exp(-kappa r)``;
        carrying the grid further only costs stability, since the log grid's
        step in ``r`` grows with ``r``.
        """
        p = self.params
        r = self.r
        kappa = math.sqrt(2.0 * p.mu * max(-E, 0.0)) / p.hbar
        if kappa > 0:
            g_full = self._g(E, r)
            m = _matching_index(g_full)
            cut = np.searchsorted(r, r[m] + _TAIL / kappa)
            return g_full[: max(cut, m + 4)]
        return self._g(E, r)

    def _g(self, E, r):
        p = self.params
        z = p.alpha * r
        e = np.exp(-2.0 * z)
        V = -p.V0 * 4.0 * e / (1.0 + e) ** 2
        rp = r + self.shift
        F_rp2 = 2.0 * p.mu / p.hbar**2 * (V - E) * rp * rp
        if self.gamma != 0.0:
            F_rp2 = F_rp2 + self.gamma * self._r2c(r) * (rp / r) ** 2
        return F_rp2 + 0.25

    def outward_seed(self, E: float) -> tuple[float, float]:
        """``y = r^(p - 1/2) (1 + c2 r^2 + c4 r^4)`` at the first two grid points.

        With ``F = gamma/r^2 + F0 + F2 r^2 + ...`` the Frobenius recursion gives
        ``c2 = F0 / (4p + 2)`` and ``c4 = (F0 c2 + F2) / (8p + 12)``.
        """
        p = self.params
        pw = (self.k - 1) / 2.0
        scale = 2.0 * p.mu / p.hbar**2
        a2 = p.alpha**2
        F0 = scale * (-p.V0 - E)
        F2 = scale * p.V0 * a2
        if self.mode == APPROX:
            F0 -= self.gamma * a2 / 3.0
            F2 += self.gamma * a2 * a2 / 15.0
        c2 = F0 / (4.0 * pw + 2.0)
        c4 = (F0 * c2 + F2) / (8.0 * pw + 12.0)
        r0, r1 = self.r[:2]

        def series(r):
            r2 = r * r
            return 1.0 + r2 * (c2 + c4 * r2)

        if self.shift:
            # y = R / sqrt(r + shift) with R regular and nonzero at the origin
            return (series(r0) / math.sqrt(r0 + self.shift),
                    series(r1) / math.sqrt(r1 + self.shift))
        # common factor r0^(p - 1/2) dropped
        return series(r0), (r1 / r0) ** (pw - 0.5) * series(r1)


@dataclass(frozen=True)
class EigenResult:
    energy: float
    node_count: int
    boundary_mismatch: float


def count_nodes(ode: RadialODE, E: float) -> int:
    """Zeros of the outward solution on ``(r_min, r_max)``.

    By Sturm oscillation this equals the number of eigenvalues (with the
    wall at ``r_max``) lying below ``E``.
    """
    g = ode.g(E)
    y0, y1 = ode.outward_seed(E)
    return int(_count(g, ode.h, y0, y1))


def _matching_index(g: np.ndarray) -> int:
    allowed = np.flatnonzero(g - 0.25 < 0.0)
    m = int(allowed[-1]) if allowed.size else len(g) // 2
    return min(max(m, 2), len(g) - 4)


def integrate_numerov(ode: RadialODE, E: float):
    """Shoot at trial energy ``E``.

    Returns ``(node_count, mismatch)``: the node count of the outward
    solution over the full grid, and the discrete Wronskian of the outward
    and inward solutions at the outer classical turning point, each solution
    scaled to unit maximum.  The Wronskian is continuous in ``E`` and vanishes
    exactly on eigenvalues.
    """
    if not E < 0:
        raise DomainError("trial energy must be negative")
    nodes, w, _ = _shoot(ode, E)
    return nodes, w


def _shoot(ode: RadialODE, E: float, want_nodes: bool = True):
    g = ode.g(E)
    h = ode.h
    m = _matching_index(g)
    y0, y1 = ode.outward_seed(E)
    out = _fill(g, h, y0, y1, m + 1)
    grev = g[::-1].copy()
    stop_in = len(g) - 1 - m
    inn = _fill(grev, h, 0.0, 1e-30, stop_in)[::-1]  # indices m .. N-1
    out = out / np.max(np.abs(out))
    inn = inn / np.max(np.abs(inn))
    c = h * h / 12.0
    u_out_m = (1 - c * g[m]) * out[m]
    u_out_m1 = (1 - c * g[m + 1]) * out[m + 1]
    u_in_m = (1 - c * g[m]) * inn[0]
    u_in_m1 = (1 - c * g[m + 1]) * inn[1]
    w = u_out_m * u_in_m1 - u_out_m1 * u_in_m
    nodes = int(_count(g, h, y0, y1)) if want_nodes else -1
    return nodes, w, (m, out, inn)


def _matched_nodes(out, inn) -> int:
    y = np.concatenate([out[:-1], inn * (out[-2] / inn[0]) if inn[0] != 0 else inn])
    s = np.sign(y)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def find_eigenvalue(ode: RadialODE, n_r: int) -> EigenResult:
    """The ``n_r``-th eigenvalue (counting from 0) of ``ode``.

    Node-count bisection isolates the eigenvalue, then Brent's method drives
    the matching Wronskian to zero.
    """
    if n_r < 0:
        raise DomainError("n_r must be >= 0")
    lo = -ode.params.V0
    hi = ode.e_top
    n_lo = count_nodes(ode, lo)
    n_hi = count_nodes(ode, hi)
    if n_hi < n_r + 1:
        raise EigenvalueNotFoundError(
            f"well supports only {n_hi} bound states with eps >= {ode.eps_floor}", n_hi
        )
    if n_lo > n_r:
        raise EigenvalueNotFoundError("eigenvalue lies below -V0; grid too coarse", n_lo)
    for _ in range(200):
        if n_lo == n_r and n_hi == n_r + 1:
            break
        mid = 0.5 * (lo + hi)
        n_mid = count_nodes(ode, mid)
        if n_mid <= n_r:
            lo, n_lo = mid, n_mid
        else:
            hi, n_hi = mid, n_mid

    def wronskian(E):
        return _shoot(ode, E, want_nodes=False)[1]

    w_lo, w_hi = wronskian(lo), wronskian(hi)
    for _ in range(60):
        if w_lo * w_hi < 0:
            break
        # shrink toward the eigenvalue while keeping the node bracket
        mid = 0.5 * (lo + hi)
        if count_nodes(ode, mid) <= n_r:
            lo, w_lo = mid, wronskian(mid)
        else:
            hi, w_hi = mid, wronskian(mid)
    E = brentq(wronskian, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=200)
    _, w, (m, out, inn) = _shoot(ode, E, want_nodes=False)
    c = ode.h**2 / 12.0
    g = ode.g(E)
    u_out = (1 - c * g[m]) * out[m]
    u_in = (1 - c * g[m]) * inn[0]
    mismatch = abs(w / (u_out * u_in)) if u_out * u_in != 0 else abs(w)
    return EigenResult(energy=E, node_count=_matched_nodes(out, inn), boundary_mismatch=mismatch)


def bound_state_count(ode: RadialODE) -> int:
    """Eigenvalues below the shallowest trial energy."""
    return count_nodes(ode, ode.e_top)
