"""Shared fixtures; prints the acceptance verdicts at the end of the run."""
import pytest

from ptd.model import PhysicalParams

ACCEPTANCE = {}


@pytest.fixture
def unit_params():
    return PhysicalParams(V0=1.0, alpha=1.0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}")
