import os
from collections import defaultdict

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> list of (test id, passed)
_CRITERIA: dict = defaultdict(list)


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        # an expected failure counts against the criterion: it documents a clause that does not hold
        passed = report.outcome == "passed" and not hasattr(report, "wasxfail")
        _CRITERIA[marker].append((report.nodeid, passed))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        results = _CRITERIA[number]
        verdict = "PASS" if all(ok for _, ok in results) else "FAIL"
        failing = [nodeid.split("::")[-1] for nodeid, ok in results if not ok]
        suffix = f"  (not met: {', '.join(failing)})" if failing else ""
        terminalreporter.write_line(f"criterion {number}: {verdict}{suffix}")
