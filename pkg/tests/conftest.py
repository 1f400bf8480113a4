import mpmath
import pytest
from hypothesis import settings

from certipoly.data import DataSet

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")
# oracles run well above the 128-bit working precision
mpmath.mp.dps = 60


@pytest.fixture(scope="session")
def data():
    return DataSet()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def full_report():
    """One `verify all` run shared by the suite and acceptance tests (with timings)."""
    import time

    from certipoly.suite import SuiteConfig, run_suite

    start = time.perf_counter()
    report = run_suite(SuiteConfig("all"))
    return report, time.perf_counter() - start
