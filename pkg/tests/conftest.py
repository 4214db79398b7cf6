import time

import pytest

from spinqc.algolib import builtin_library
from spinqc.model import builtin_set

_SESSION_START = time.monotonic()
_ACCEPTANCE_RESULTS: list[tuple[str, bool]] = []


@pytest.fixture(scope="session")
def nmr_set():
    return builtin_set("NMR")


@pytest.fixture(scope="session")
def ideal_set():
    return builtin_set("Ideal")


@pytest.fixture(scope="session")
def nmr_ideal_set():
    return builtin_set("NMR-Ideal")


@pytest.fixture(scope="session")
def library():
    return builtin_library()


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(criterion): ties a test to one acceptance criterion"
    )


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    marker_name = getattr(report, "_acceptance_criterion", None)
    if marker_name:
        _ACCEPTANCE_RESULTS.append((marker_name, report.passed))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and marker.args:
        report._acceptance_criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for criterion, passed in _ACCEPTANCE_RESULTS:
        tw.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}")
    elapsed = time.monotonic() - _SESSION_START
    verdict = "PASS" if elapsed < 60.0 else "FAIL"
    tw.write_line(f"{verdict}  full suite runtime {elapsed:.1f}s (budget 60s)")
