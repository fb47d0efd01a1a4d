import json
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from idealforge.fltcase import cyclotomic_field  # noqa: E402
from idealforge.numfield import make_field  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
SUITE_BUDGET_SECONDS = 120.0

_ACCEPTANCE: list[tuple[str, bool, float]] = []
_START = time.perf_counter()


@pytest.fixture(scope="session")
def schema():
    return json.loads((ROOT / "schema" / "report.json").read_text())


@pytest.fixture(scope="session")
def eisenstein():
    return make_field("x^2+x+1")


@pytest.fixture(scope="session")
def gaussian():
    return make_field("x^2+1")


@pytest.fixture(scope="session")
def cyclo5():
    return cyclotomic_field(5)


@pytest.fixture
def acceptance():
    """Record one acceptance criterion's outcome for the terminal summary."""
    def record(label: str, ok: bool, elapsed: float) -> bool:
        _ACCEPTANCE.append((label, ok, elapsed))
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    total = time.perf_counter() - _START
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for label, ok, elapsed in _ACCEPTANCE:
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  ({elapsed:.3f} s)")
        ok = total < SUITE_BUDGET_SECONDS
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  AC10 full suite wall-clock < {SUITE_BUDGET_SECONDS:.0f} s  ({total:.1f} s)"
        )


def pytest_sessionfinish(session, exitstatus):
    if _ACCEPTANCE and time.perf_counter() - _START >= SUITE_BUDGET_SECONDS:
        session.exitstatus = 1
