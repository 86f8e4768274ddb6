"""Acceptance criteria 1-10, each at its stated tolerance.

Every test records a one-line verdict that is printed in the pytest terminal
summary (section "acceptance criteria"), whether it passes or fails.
"""
import subprocess
import sys
import time

from conftest import ACCEPTANCE
from ptd import validation as v


def _verdict(number, results, extra=""):
    ok = all(r.passed for r in results)
    parts = [f"{r.name}={r.value:.3g} ({r.relation} {r.tolerance:g})" for r in results]
    text = "; ".join(parts) + (f"; {extra}" if extra else "")
    ACCEPTANCE[number] = (ok, text)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}")
    failed = [r for r in results if not r.passed]
    assert not failed, failed


def test_criterion_1_closed_form_vs_oracle():
    start = time.perf_counter()
    results = v.check_oracle_grid()
    elapsed = time.perf_counter() - start
    runtime = v.CheckResult("runtime_seconds", 1, elapsed, 30.0, "<=", elapsed <= 30.0)
    _verdict(1, results + [runtime])


def test_criterion_2_one_dimensional_ground_state():
    _verdict(2, v.check_d1())


def test_criterion_3_approximation_trend():
    _verdict(3, v.check_approximation_trend())


def test_criterion_4_critical_screening():
    _verdict(4, v.check_critical_alpha())


def test_criterion_5_wavefunction_and_errata():
    _verdict(5, v.check_wavefunction())


def test_criterion_6_normalization():
    _verdict(6, v.check_normalization())


def test_criterion_7_expectation_values():
    _verdict(7, v.check_expectations())


def test_criterion_8_nu_engine():
    _verdict(8, v.check_nu_engine())


def test_criterion_9_figure_properties():
    _verdict(9, v.check_figures())


def test_criterion_10_validate_is_deterministic(tmp_path):
    reports = []
    for name in ("first.json", "second.json"):
        out = tmp_path / name
        proc = subprocess.run(
            [sys.executable, "-m", "ptd.cli", "validate", "--out", str(out)],
            capture_output=True, text=True, timeout=300,
        )
        assert proc.returncode == 0, proc.stderr
        reports.append(out.read_bytes())
    same = reports[0] == reports[1]
    result = v.CheckResult("byte_identical_reports", 10, float(same), 0.0, ">", same)
    _verdict(10, [result], extra=f"{len(reports[0])} bytes each")


def test_quick_subset_under_ten_seconds():
    start = time.perf_counter()
    results = v.run_checks(quick=True)
    assert time.perf_counter() - start < 10.0
    assert all(r.passed for r in results)
