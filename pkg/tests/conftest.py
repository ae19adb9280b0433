import time

import pytest
from hypothesis import HealthCheck, settings

from torswide.quiverrep import cyclic_quiver, d4_quiver, kronecker_quiver, linear_quiver
from torswide.universe import enumerate_universe

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# acceptance tests append (criterion, status, description) here
ACCEPTANCE_LINES: list[tuple[int, str, str]] = []
_SESSION_START = time.monotonic()


@pytest.fixture(scope="session")
def a2():
    return enumerate_universe(linear_quiver(2), "dynkin")


@pytest.fixture(scope="session")
def a3():
    return enumerate_universe(linear_quiver(3), "dynkin")


@pytest.fixture(scope="session")
def d4():
    return enumerate_universe(d4_quiver(), "dynkin")


@pytest.fixture(scope="session")
def kron6():
    return enumerate_universe(kronecker_quiver(), "kronecker", {"bound": 6})


@pytest.fixture(scope="session")
def kron3():
    return enumerate_universe(kronecker_quiver(), "kronecker", {"bound": 3})


@pytest.fixture(scope="session")
def tube2():
    return enumerate_universe(cyclic_quiver(2), "tube", {"bound": 4})


@pytest.fixture(scope="session")
def tube3():
    return enumerate_universe(cyclic_quiver(3), "tube", {"bound": 6})


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    elapsed = time.monotonic() - _SESSION_START
    lines = {}
    for num, status, desc in ACCEPTANCE_LINES:
        lines.setdefault(num, []).append((status, desc))
    # criterion 10 also bounds the wall-clock of the whole session
    lines.setdefault(10, []).append(("PASS" if elapsed < 300 else "FAIL",
                                     f"full suite wall-clock {elapsed:.1f}s (limit 300s)"))
    for num in sorted(lines):
        status = "PASS" if all(s == "PASS" for s, _ in lines[num]) else "FAIL"
        tr.write_line(f"criterion {num:>2}: {status}  " + "; ".join(d for _, d in lines[num]))
