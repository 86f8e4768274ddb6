"""Real special functions needed by the normalization and wavefunction code.

Everything here is self-contained: log-gamma by a shifted Stirling series,
Beta and Pochhammer built on top of it, the terminating Gauss series and
Jacobi polynomials by their three-term recurrence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "ln_gamma",
    "beta",
    "pochhammer",
    "hyp2f1_terminating",
    "JacobiParams",
    "jacobi",
    "jacobi_derivative",
]

_HALF_LN_2PI = 0.918938533204672741780329736406

# B_{2j} / (2j (2j - 1)) for j = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_SHIFT_TO = 10.0


def ln_gamma(x: float) -> float:
    """Natural log of the Gamma function for ``x > 0``.

    Arguments below 10 are shifted up with ``Gamma(x + 1) = x Gamma(x)``; the
    asymptotic series truncated after eight terms is then accurate to well
    below 1e-16 relative.
    """
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"ln_gamma requires a finite x > 0, got {x!r}")
    shift = 0.0
    if x < _SHIFT_TO:
        prod = 1.0
        while x < _SHIFT_TO:
            prod *= x
            x += 1.0
        shift = math.log(prod)
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    for c in reversed(_STIRLING):
        series = series * inv2 + c
    series *= inv
    return (x - 0.5) * math.log(x) - x + _HALF_LN_2PI + series - shift


def beta(x: float, y: float) -> float:
    """Euler Beta function ``Gamma(x) Gamma(y) / Gamma(x + y)``."""
    if not (x > 0 and y > 0):
        raise DomainError(f"beta requires positive arguments, got ({x!r}, {y!r})")
    return math.exp(ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y))


def pochhammer(a: float, n: int) -> float:
    """Rising factorial ``(a)_n = a (a + 1) ... (a + n - 1)``."""
    if n < 0 or int(n) != n:
        raise DomainError(f"pochhammer needs an integer n >= 0, got {n!r}")
    out = 1.0
    for j in range(int(n)):
        out *= a + j
    return out


def hyp2f1_terminating(neg_n: int, b: float, c: float, z):
    """``2F1(-n, b; c; z)`` as the finite sum of its ``n + 1`` terms.

    ``neg_n`` is the first parameter itself (``0, -1, -2, ...``).
    """
    if int(neg_n) != neg_n or neg_n > 0:
        raise DomainError(f"first parameter must be a non-positive integer, got {neg_n!r}")
    n = -int(neg_n)
    for j in range(n):
        if c + j == 0:
            raise DomainError(f"c = {c!r} hits a pole of the series at term {j + 1}")
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = term.copy()
    for j in range(n):
        term = term * ((j - n) * (b + j) / ((c + j) * (j + 1))) * z
        total = total + term
    return total[()] if total.ndim == 0 else total


@dataclass(frozen=True)
class JacobiParams:
    n: int
    a: float
    b: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"Jacobi degree must be an integer >= 0, got {self.n!r}")
        if not (self.a > -1 and self.b > -1):
            raise DomainError(f"Jacobi parameters must exceed -1, got a={self.a!r}, b={self.b!r}")

    def __call__(self, x):
        return jacobi(self.n, self.a, self.b, x)


def jacobi(n: int, a: float, b: float, x):
    """Jacobi polynomial ``P_n^{(a,b)}(x)`` via the three-term recurrence in n."""
    JacobiParams(n, a, b)
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev[()] if x.ndim == 0 else p_prev
    p = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    for m in range(2, n + 1):
        s = 2 * m + a + b
        c0 = 2.0 * m * (m + a + b) * (s - 2.0)
        c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b)
        c2 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s
        p_prev, p = p, (c1 * p - c2 * p_prev) / c0
    return p[()] if x.ndim == 0 else p


def jacobi_derivative(n: int, a: float, b: float, x):
    """``d/dx P_n^{(a,b)}(x) = (n + a + b + 1)/2 P_{n-1}^{(a+1,b+1)}(x)``."""
    if n == 0:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        return out[()] if x.ndim == 0 else out
    return 0.5 * (n + a + b + 1.0) * jacobi(n - 1, a + 1.0, b + 1.0, x)
