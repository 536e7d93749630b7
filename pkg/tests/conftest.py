import functools

import pytest
import sympy

from hamming_commutator.hamming import build_hamming


@functools.lru_cache(maxsize=None)
def hamming(D, r):
    """Shared contexts; building and verifying is the expensive part."""
    return build_hamming(D, r)


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                         for row in m.to_fractions()])


def sympy_span_dim(*mats):
    return sympy.Matrix.hstack(*mats).rank()


# -- acceptance scorecard ---------------------------------------------------------

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for name, args in getattr(report, "acceptance", ()):
        # a parametrized criterion fails if any of its cases does
        prev = _acceptance.get(args[0], (args[1], "passed"))[1]
        outcome = report.outcome if prev == "passed" else prev
        _acceptance[args[0]] = (args[1], outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is not None:
        rep.acceptance = [("acceptance", m.args)]


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_acceptance):
        title, outcome = _acceptance[k]
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] criterion {k}: {title}")
