import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_RESULTS: list[tuple[str, str]] = []
_NOTES: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): a gated acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _RESULTS.append((marker.args[0], "PASS" if report.passed else "FAIL"))


@pytest.fixture
def note():
    """Record a line for the end-of-run summary (timings, observed maxima)."""
    return _NOTES.append


def pytest_terminal_summary(terminalreporter):
    if _NOTES:
        terminalreporter.section("measurements")
        for line in _NOTES:
            terminalreporter.write_line(line)
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for name, status in _RESULTS:
            terminalreporter.write_line(f"{status} {name}")
