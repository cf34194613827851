import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stochsteiner.fixtures import load  # noqa: E402

_ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def fig1():
    return load("fig1")


@pytest.fixture(scope="session")
def fig1_rooted():
    return load("fig1_rooted")


@pytest.fixture(scope="session")
def fig2():
    return load("fig2")


@pytest.fixture(scope="session")
def fig3():
    return load("fig3")


@pytest.fixture(scope="session")
def fig4():
    return load("fig4")


@pytest.fixture(scope="session")
def fig4_swapped():
    return load("fig4_swapped")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    num, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE[num] = (title, rep.outcome, rep.duration)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, outcome, duration = _ACCEPTANCE[num]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {title}  ({duration:.1f}s)")
