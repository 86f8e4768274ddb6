"""Composite Gauss-Legendre quadrature with dyadic refinement toward both ends.

The interval is split at its midpoint and each half is covered by panels
``[e + L/2^(j+1), e + L/2^j]`` marching toward the endpoint ``e``.  For an
integrand that behaves like ``|x - e|^p`` near the end, successive panel
contributions form a geometric sequence with ratio ``2^-(p+1)``; the part of
the half that is never visited is estimated by summing that sequence, so even
exponents close to -1 converge in a few dozen levels.  Each panel is itself
integrated adaptively so interior peaks are resolved.
"""
from __future__ import annotations

import numpy as np

from .errors import ToleranceNotMetError

__all__ = ["integrate_adaptive", "integrate_unit", "integrate_halfline", "gauss_legendre"]

_ORDER = 20
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(_ORDER)


def gauss_legendre(f, lo, hi):
    """Fixed 20-point rule on ``[lo, hi]``; returns (integral, integral of |f|)."""
    half = 0.5 * (hi - lo)
    x = 0.5 * (hi + lo) + half * _NODES
    y = np.asarray(f(x), dtype=float)
    return half * np.dot(_WEIGHTS, y), abs(half) * np.dot(_WEIGHTS, np.abs(y))


def _panel(f, lo, hi, rel, depth):
    whole, whole_abs = gauss_legendre(f, lo, hi)
    mid = 0.5 * (lo + hi)
    left, left_abs = gauss_legendre(f, lo, mid)
    right, right_abs = gauss_legendre(f, mid, hi)
    split = left + right
    split_abs = left_abs + right_abs
    if abs(split - whole) <= rel * split_abs or depth == 0 or split_abs == 0.0:
        return split, split_abs
    a, a_abs = _panel(f, lo, mid, rel, depth - 1)
    b, b_abs = _panel(f, mid, hi, rel, depth - 1)
    return a + b, a_abs + b_abs


def _toward_endpoint(f, end, length, rel_tol, max_levels):
    """Integrate ``f`` over the half ``[end, end + length]`` (length may be negative).

    Returns ``(estimate, integral of |f|)``.
    """
    total = 0.0
    total_abs = 0.0
    contributions = []
    estimates = []
    for level in range(max_levels):
        far = end + length / 2.0**level
        near = end + length / 2.0 ** (level + 1)
        lo, hi = (near, far) if length > 0 else (far, near)
        c, c_abs = _panel(f, lo, hi, 1e-13, 12)
        total += c
        total_abs += c_abs
        contributions.append(c)
        if level < 2:
            continue
        scale = max(total_abs, np.finfo(float).tiny)
        c1, c0 = contributions[-1], contributions[-2]
        if abs(c1) <= 1e-3 * rel_tol * scale and abs(c0) <= 1e-3 * rel_tol * scale:
            return total, total_abs
        ratio = c1 / c0 if c0 != 0.0 else np.inf
        if not 0.0 < ratio < 1.0:
            estimates.clear()
            continue
        tail = c1 * ratio / (1.0 - ratio)
        estimates.append(total + tail)
        if len(estimates) >= 3:
            spread = max(estimates[-3:]) - min(estimates[-3:])
            if spread <= rel_tol * scale:
                return estimates[-1], total_abs + abs(tail)
    best = estimates[-1] if estimates else total
    raise ToleranceNotMetError(f"endpoint refinement did not converge in {max_levels} levels", best)


def integrate_adaptive(f, a, b, rel_tol=1e-10, max_levels=60):
    """``int_a^b f(x) dx`` for vectorized ``f`` with at worst power-law endpoint
    singularities of exponent > -1.

    ``rel_tol`` is measured against ``int |f|`` so integrals that cancel to
    zero still terminate.  Raises :class:`ToleranceNotMetError` (carrying the
    best estimate) when either half needs more than ``max_levels`` panels.
    """
    if a == b:
        return 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    mid = 0.5 * (a + b)
    left, _ = _toward_endpoint(f, a, mid - a, rel_tol, max_levels)
    right, _ = _toward_endpoint(f, b, mid - b, rel_tol, max_levels)
    return sign * (left + right)


def integrate_unit(g, rel_tol=1e-10, max_levels=60):
    """``int_0^1 g(s, 1 - s) ds`` with the complement supplied exactly.

    Near ``s = 1`` the second argument is formed directly rather than as
    ``1 - s``, so factors like ``(1 - s)^(eps - 1)`` keep full relative
    precision all the way into the endpoint.
    """
    left, _ = _toward_endpoint(lambda x: g(x, 1.0 - x), 0.0, 0.5, rel_tol, max_levels)
    right, _ = _toward_endpoint(lambda u: g(1.0 - u, u), 0.0, 0.5, rel_tol, max_levels)
    return left + right


def integrate_halfline(f, rel_tol=1e-10, max_levels=60):
    """``int_0^inf f(r) dr`` through the map ``r = t / (1 - t)``."""

    def mapped(t):
        t = np.asarray(t, dtype=float)
        one_minus = 1.0 - t
        return f(t / one_minus) / one_minus**2

    return integrate_adaptive(mapped, 0.0, 1.0, rel_tol, max_levels)
