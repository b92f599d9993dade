import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_results: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or rep.failed:
        prev = _results.get(n, True)
        _results[n] = prev and rep.passed if rep.when == "call" else False


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if _results[n] else 'FAIL'}")
