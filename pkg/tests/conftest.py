import os
import sys

import mpmath
import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

# oracle evaluations run far above the library's working precision
mpmath.mp.prec = 2000

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_acceptance: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.passed else "FAIL"
        _acceptance[number] = (status, title, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        status, title, duration = _acceptance[number]
        terminalreporter.write_line(f"AC{number:<2} {status}  {title}  ({duration:.2f} s)")
