from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        key = mark.args[0]
        prev = _CRITERIA.get(key, (mark.args[1], "PASS"))[1]
        status = "PASS" if rep.outcome == "passed" and prev == "PASS" else "FAIL"
        _CRITERIA[key] = (mark.args[1], status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        title, status = _CRITERIA[key]
        terminalreporter.write_line(f"[{status}] criterion {key}: {title}")


@st.composite
def admissible_q(draw, max_height=9):
    num = draw(st.integers(-max_height, max_height))
    den = draw(st.integers(1, max_height))
    q = Fraction(num, den)
    if q in (0, 1, -1):
        q = Fraction(2)
    return q
