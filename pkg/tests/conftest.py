import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from xitheta.moments import build_moment_table  # noqa: E402

CRITERIA = {}


def record_criterion(number: int, ok: bool, detail: str):
    CRITERIA[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        ok, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


_TABLES = {}


@pytest.fixture(scope="session")
def table():
    """Memoised moment tables keyed by (tau, j_max, tol)."""

    def get(tau, j_max=8, tol=1e-12):
        key = (float(tau), j_max, tol)
        if key not in _TABLES:
            _TABLES[key] = build_moment_table(tau, j_max, tol)
        return _TABLES[key]

    return get
