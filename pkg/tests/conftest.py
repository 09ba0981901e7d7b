from __future__ import annotations

from hypothesis import settings, strategies as st

from dtmotive.motive import MotiveClass

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

PRIMES = (2, 5, 7, 13)


@st.composite
def tag_free_classes(draw, min_e=-3, max_e=6, max_terms=4, whole=True):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = draw(st.integers(min_e, max_e))
        e2 = 2 * e if whole else draw(st.integers(2 * min_e, 2 * max_e))
        terms[(e2, 0)] = draw(st.integers(-9, 9))
    return MotiveClass(terms)


@st.composite
def polynomial_classes(draw, max_deg=5, max_terms=4):
    """Whole non-negative powers only, so they can be evaluated."""
    return draw(tag_free_classes(min_e=0, max_e=max_deg, max_terms=max_terms))


# -- one summary line per acceptance criterion ------------------------------------

_criteria: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n = marker.args[0]
    status = "pass" if call.excinfo is None else "FAIL"
    line = f"{status} ({call.duration:.1f} s) {item.name}"
    notes = [v for k, v in item.user_properties if k == "warning"]
    if notes:
        line += "; warnings: " + "; ".join(notes)
    _criteria[n] = line


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n}: {_criteria[n]}")
