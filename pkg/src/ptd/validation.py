"""Closed forms checked against the numerical oracles.

Each check returns a :class:`CheckResult` holding the measured value, the
threshold and how they are compared.  :func:`run_checks` runs them in a fixed
order; with ``quick=True`` the two checks that sweep the Numerov oracle over
many states are skipped.  Nothing time- or machine-dependent enters a result,
so the JSON report is byte-reproducible.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import nu
from .errors import DomainError, PTDError
from .expectation import expectation_quadrature, inv_r2_hft, kinetic, potential_hft
from .model import PhysicalParams, StateLabel, is_bound, reduce
from .oracle import APPROX, EXACT, RadialODE, find_eigenvalue
from .spectrum import bracket_principal, critical_alpha, energy, energy_principal, figure1_data
from .specfun import beta
from .wavefunction import (
    AS_PRINTED,
    CORRECTED,
    node_count,
    normalization_quadrature,
    normalization_series,
    ode_residual,
    overlap,
    profile_maximum,
    radial_solution,
    small_r_slope,
)

__all__ = [
    "CheckResult",
    "FIXTURE_D",
    "FIXTURE_ELL",
    "FIXTURE_NR",
    "FIXTURE_ALPHA",
    "FIGURE_STATES",
    "fixture_states",
    "run_checks",
    "report_json",
    "CHECKS",
    "QUICK",
]

FIXTURE_D = (1, 2, 3, 5)
FIXTURE_ELL = (0, 1, 2)
FIXTURE_NR = (0, 1)
FIXTURE_ALPHA = (0.25, 0.5)

#: (figure id, state) for the four profile figures
FIGURE_STATES = {
    2: StateLabel(D=3, ell=1, n_r=0),
    3: StateLabel(D=5, ell=1, n_r=0),
    4: StateLabel(D=3, ell=2, n_r=0),
    5: StateLabel(D=5, ell=2, n_r=0),
}

_RESIDUAL_S = np.linspace(0.05, 0.95, 181)


@dataclass(frozen=True)
class CheckResult:
    """One measured quantity against its threshold.

    ``relation`` is ``"<="``, ``"<"`` or ``">"`` and reads
    ``value relation tolerance``.  ``value`` is ``None`` when the check
    could not be evaluated (``detail`` then says why).
    """

    name: str
    criterion: int
    value: float | None
    tolerance: float
    relation: str
    passed: bool
    detail: str = ""


def _result(name, criterion, value, tolerance, relation="<=", detail=""):
    ok = {"<=": value <= tolerance, "<": value < tolerance, ">": value > tolerance}[relation]
    return CheckResult(name, criterion, float(value), tolerance, relation, bool(ok), detail)


def fixture_states(D_list=FIXTURE_D, ells=FIXTURE_ELL, nrs=FIXTURE_NR, alphas=FIXTURE_ALPHA):
    """Bound ``(params, state)`` pairs of the fixture grid, in a fixed order."""
    out = []
    for a, D, ell, n_r in itertools.product(alphas, D_list, ells, nrs):
        params = PhysicalParams(V0=1.0, alpha=a)
        state = StateLabel(D, ell, n_r)
        if is_bound(params, state):
            out.append((params, state))
    return out


def _label(params, state):
    return f"(D={state.D}, ell={state.ell}, n_r={state.n_r}, alpha={params.alpha:g})"


# --- criterion 1-3: spectrum against the Numerov oracle -------------------------------


def check_oracle_grid(mode=CORRECTED):
    worst, where, bad_nodes = 0.0, "", []
    for params, state in fixture_states():
        res = find_eigenvalue(RadialODE(params, state.D, state.ell, APPROX), state.n_r)
        err = abs(res.energy - energy(params, state).energy)
        if err > worst:
            worst, where = err, _label(params, state)
        if res.node_count != state.n_r:
            bad_nodes.append(_label(params, state))
    out = [_result("oracle_vs_closed_form_energy", 1, worst, 1e-6, detail=f"worst at {where}")]
    out.append(_result("oracle_node_count_mismatches", 1, len(bad_nodes), 0, detail=", ".join(bad_nodes)))
    return out


def check_d1(mode=CORRECTED):
    params = PhysicalParams(V0=1.0, alpha=1.0)
    state = StateLabel(D=1)
    e_closed = energy(params, state).energy
    e_oracle = find_eigenvalue(RadialODE(params, 1, 0, APPROX), 0).energy
    return [
        _result("d1_ground_closed_form", 2, abs(e_closed + 0.5), 1e-6),
        _result("d1_ground_oracle", 2, abs(e_oracle + 0.5), 1e-6),
        _result("d1_ground_principal", 2, abs(energy_principal(params, 0, 1) + 0.5), 1e-6),
    ]


def check_approximation_trend(mode=CORRECTED):
    state = StateLabel(D=3, ell=1, n_r=0)
    gaps = []
    for a in (0.2, 0.4):
        params = PhysicalParams(V0=1.0, alpha=a)
        e_exact = find_eigenvalue(RadialODE(params, state.D, state.ell, EXACT), 0).energy
        gaps.append(abs(e_exact - energy(params, state).energy))
    ratio = gaps[0] / gaps[1]
    return [
        _result(
            "exact_equation_gap_ratio", 3, ratio, 0.35, "<",
            detail=f"gap(0.2)={gaps[0]:.6g}, gap(0.4)={gaps[1]:.6g}",
        )
    ]


# --- criterion 4: critical screening --------------------------------------------


def _bisect_zero_energy(n, D, lo=1e-3, hi=100.0):
    """Bisection on the sign of the energy bracket (bound below, unbound above)."""
    params = PhysicalParams(V0=1.0, alpha=lo)
    if bracket_principal(params, n, D) <= 0:
        raise DomainError("lower end of the bisection interval is unbound")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if bracket_principal(params.with_alpha(mid), n, D) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def check_critical_alpha(mode=CORRECTED):
    worst = 0.0
    for n, D in ((0, 3), (1, 3), (0, 5)):
        worst = max(worst, abs(_bisect_zero_energy(n, D) - critical_alpha(n, D)))
    out = [_result("critical_alpha_vs_bisection", 4, worst, 1e-10)]
    try:
        critical_alpha(0, 1)
        refused = 0.0
    except DomainError:
        refused = 1.0
    out.append(_result("critical_alpha_refuses_d1_ground", 4, refused, 0.0, ">",
                       detail="1 when critical_alpha(0, 1) raises"))
    params = PhysicalParams(V0=1.0, alpha=10.0)
    e = find_eigenvalue(RadialODE(params, 1, 0, APPROX), 0).energy
    out.append(_result("d1_bound_at_alpha_10_oracle", 4, e, 0.0, "<",
                       detail=f"closed form {energy(params, StateLabel(1)).energy:.12g}"))
    return out


# --- criterion 5: wavefunction correctness --------------------------------------


def check_wavefunction(mode=CORRECTED):
    worst_res, worst_slope = 0.0, 0.0
    where_res = where_slope = ""
    for params, state in fixture_states():
        sol = radial_solution(params, state, mode)
        res = float(np.max(np.abs(ode_residual(sol, _RESIDUAL_S))))
        if res > worst_res:
            worst_res, where_res = res, _label(params, state)
        slope = abs(small_r_slope(sol) - (state.ell + 0.5 * (state.D - 1)))
        if slope > worst_slope:
            worst_slope, where_slope = slope, _label(params, state)
    out = [
        _result(f"ode_residual_{mode}", 5, worst_res, 1e-6, "<", detail=f"worst at {where_res}"),
        _result(f"small_r_slope_{mode}", 5, worst_slope, 0.01, detail=f"worst at {where_slope}"),
    ]
    least, where = math.inf, ""
    for params, state in fixture_states():
        if state.k < 2:
            continue
        sol = radial_solution(params, state, AS_PRINTED)
        res = float(np.max(np.abs(ode_residual(sol, _RESIDUAL_S))))
        if res < least:
            least, where = res, _label(params, state)
    out.append(_result("ode_residual_as_printed_fails", 5, least, 1e-2, ">",
                       detail=f"smallest at {where}"))
    return out


# --- criterion 6: normalization -------------------------------------------------


def check_normalization(mode=CORRECTED):
    worst_pair, worst_unit, worst_orth = 0.0, 0.0, 0.0
    states = fixture_states(nrs=(0, 1, 2))
    for params, state in states:
        cs = normalization_series(params, state, mode)
        cq = normalization_quadrature(params, state, mode)
        worst_pair = max(worst_pair, abs(cs / cq - 1.0))
        sol = radial_solution(params, state, mode)
        worst_unit = max(worst_unit, abs(overlap(sol, sol) - 1.0))
        if state.n_r == 1:
            ground = radial_solution(params, StateLabel(state.D, state.ell, 0), mode)
            worst_orth = max(worst_orth, abs(overlap(ground, sol)))
    worst_c0 = 0.0
    for params, state in states:
        if state.n_r:
            continue
        red = reduce(params, state)
        c0 = math.sqrt(2.0 * params.alpha / beta(red.v + 0.5, red.epsilon))
        worst_c0 = max(worst_c0, abs(c0 / normalization_quadrature(params, state, CORRECTED) - 1.0))
    return [
        _result("norm_series_vs_quadrature", 6, worst_pair, 1e-8),
        _result("normalized_integral_is_one", 6, worst_unit, 1e-8),
        _result("ground_state_constant_closed_form", 6, worst_c0, 1e-10),
        _result("orthogonality_nr0_nr1", 6, worst_orth, 1e-6),
    ]


# --- criterion 7: expectation values --------------------------------------------


def check_expectations(mode=CORRECTED):
    worst_v = worst_fd = worst_sinh = worst_sum = worst_t = 0.0
    min_t = math.inf
    for params, state in fixture_states():
        v = potential_hft(params, state)
        worst_v = max(worst_v, abs(expectation_quadrature(params, state, "potential") / v - 1.0))
        h = 1e-6
        up = energy(params.with_V0(params.V0 * (1 + h)), state).energy
        down = energy(params.with_V0(params.V0 * (1 - h)), state).energy
        dE = (up - down) / (2 * h * params.V0)
        worst_fd = max(worst_fd, abs(dE / (v / params.V0) - 1.0))
        t = kinetic(params, state)
        e = energy(params, state).energy
        worst_sum = max(worst_sum, abs(e - (t + v)) / abs(e))
        min_t = min(min_t, t)
        worst_t = max(worst_t, abs(expectation_quadrature(params, state, "kinetic") / t - 1.0))
        if state.k > 2:
            hft = inv_r2_hft(params, state)
            worst_sinh = max(
                worst_sinh, abs(expectation_quadrature(params, state, "sinh_centrifugal") / hft - 1.0)
            )
    state = StateLabel(D=3, ell=1, n_r=0)
    gaps = []
    for a in (0.2, 0.4):
        params = PhysicalParams(V0=1.0, alpha=a)
        gaps.append(abs(expectation_quadrature(params, state, "inv_r2") / inv_r2_hft(params, state) - 1))
    return [
        _result("potential_hft_vs_quadrature", 7, worst_v, 1e-6),
        _result("hellmann_feynman_finite_difference", 7, worst_fd, 1e-6),
        _result("sinh_centrifugal_hft_vs_quadrature", 7, worst_sinh, 1e-6),
        _result("inv_r2_gap_ratio", 7, gaps[0] / gaps[1], 0.35, "<",
                detail=f"rel gap(0.2)={gaps[0]:.6g}, rel gap(0.4)={gaps[1]:.6g}"),
        _result("energy_equals_t_plus_v", 7, worst_sum, 1e-14),
        _result("kinetic_vs_quadrature", 7, worst_t, 1e-6),
        _result("kinetic_positive", 7, min_t, 0.0, ">"),
    ]


# --- criterion 8: Nikiforov-Uvarov engine ---------------------------------------


NU_K = (2, 3, 4, 5, 6)
NU_DELTA = (2.0, 5.0, 8.0, 16.0, 32.0)


def check_nu_engine(mode=CORRECTED):
    worst_root = worst_pi = worst_t = 0.0
    for k, delta in itertools.product(NU_K, NU_DELTA):
        gamma = (k - 1) * (k - 3) / 4.0
        w = math.sqrt(1.0 + 4.0 * gamma)
        for n_r in (0, 1):
            eps = 0.5 * (math.sqrt(1.0 + 4.0 * delta) - w - 2.0 * (2 * n_r + 1))
            if eps <= 0.0:
                continue
            worst_root = max(worst_root, abs(nu.quantization_root(gamma, delta, n_r) - eps))
            problem = nu.poschl_teller_problem(gamma, delta, eps)
            sol = nu.solve(problem)
            expect_pi = (0.5 * (1.0 + w), -0.5 * (1.0 + 2.0 * eps + w))
            worst_pi = max(worst_pi, max(abs(nu.coef(sol.pi, i) - expect_pi[i]) for i in (0, 1)))
            expect_t = sorted(
                -0.5 * (gamma - delta + eps**2) + sgn * 0.5 * eps * w for sgn in (-1.0, 1.0)
            )
            got = nu.t_candidates(problem)
            if len(got) == 1:
                got = got * 2
            worst_t = max(worst_t, max(abs(g - e) for g, e in zip(got, expect_t)))
    return [
        _result("nu_t_candidates", 8, worst_t, 1e-10),
        _result("nu_lower_branch_pi", 8, worst_pi, 1e-10),
        _result("nu_quantization_root", 8, worst_root, 1e-10),
    ]


# --- criterion 9: figure properties ---------------------------------------------


def check_figures(mode=CORRECTED):
    rows = figure1_data(range(1, 6), range(0, 4), [0.1])
    E = {(r.D, r.n): r.energy for r in rows}
    violations = 0
    for D in range(1, 5):
        gaps = [abs(E[(D + 1, n)] - E[(D, n)]) for n in range(4)]
        violations += sum(1 for a, b in zip(gaps, gaps[1:]) if not b < a)
    out = [_result("figure1_adjacent_dimension_gap_shrinks", 9, violations, 0)]
    node_errors = 0
    shifts = []
    for state in FIGURE_STATES.values():
        maxima = []
        for a in (0.1, 0.2):
            params = PhysicalParams(V0=1.0, alpha=a)
            sol = radial_solution(params, state, mode)
            node_errors += node_count(sol) != state.n_r
            excited = StateLabel(state.D, state.ell, 1)
            node_errors += node_count(radial_solution(params, excited, mode)) != 1
            maxima.append(profile_maximum(sol))
        shifts.append(maxima[1] - maxima[0])
    out.append(_result("figure_profile_node_count_errors", 9, node_errors, 0))
    out.append(_result("figure_profile_maximum_moves_in", 9, max(shifts), 0.0, "<"))
    return out


CHECKS = (
    check_oracle_grid,
    check_d1,
    check_approximation_trend,
    check_critical_alpha,
    check_wavefunction,
    check_normalization,
    check_expectations,
    check_nu_engine,
    check_figures,
)
QUICK = (
    check_d1,
    check_critical_alpha,
    check_wavefunction,
    check_normalization,
    check_expectations,
    check_nu_engine,
    check_figures,
)

_CRITERION = {f: i for i, f in enumerate(CHECKS, start=1)}


def run_checks(quick: bool = False, mode: str = CORRECTED) -> list[CheckResult]:
    """Run every check (or the quick subset) with wavefunctions in ``mode``.

    A check that raises is reported as failed with the error text.
    """
    out = []
    for check in QUICK if quick else CHECKS:
        try:
            out.extend(check(mode))
        except PTDError as exc:
            out.append(CheckResult(check.__name__, _CRITERION[check], None, math.nan, "<=",
                                   False, f"{type(exc).__name__}: {exc}"))
    return out


def report_json(results, config: dict) -> str:
    """Deterministic JSON document: config echo, one record per check, summary."""
    records = []
    for r in results:
        rec = asdict(r)
        rec["tolerance"] = None if math.isnan(r.tolerance) else r.tolerance
        records.append(rec)
    doc = {
        "config": config,
        "records": records,
        "summary": {"checks": len(results), "failed": sum(not r.passed for r in results)},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
