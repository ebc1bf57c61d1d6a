import pytest

from geostretch.generators import path_graph
from geostretch.graph import build_graph

_ACCEPTANCE = []


@pytest.fixture
def path3():
    return path_graph(3)


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 0.5)])


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        label = dict(report.user_properties).get("criterion", report.nodeid.split("::")[-1])
        _ACCEPTANCE.append((report.outcome.upper(), label))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for outcome, label in _ACCEPTANCE:
        terminalreporter.write_line(f"{outcome:7s} {label}")
