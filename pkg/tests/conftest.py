import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

CRITERIA = {}


def random_points(rng, n, num=9, den=9):
    """n pairwise distinct rationals p/q with |p| <= num, 1 <= q <= den."""
    pts = set()
    while len(pts) < n:
        pts.add(Fraction(rng.randint(-num, num), rng.randint(1, den)))
    pts = list(pts)
    rng.shuffle(pts)
    return tuple(pts)


@pytest.fixture
def rng():
    return random.Random(20241018)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def distinct_points(n):
    return st.lists(rationals, min_size=n, max_size=n, unique=True).map(tuple)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = CRITERIA.get(key, (marker.args[1], "PASS"))
        status = "PASS" if report.passed and prev[1] == "PASS" else "FAIL"
        CRITERIA[key] = (marker.args[1], status)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA):
        title, status = CRITERIA[key]
        terminalreporter.write_line(f"[{status}] criterion {key}: {title}")
