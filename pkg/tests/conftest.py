import re

import pytest

from fibexpr.expr import render

TERM_RE = re.compile(r"[ab][1-9][0-9]*")


def text_counts(e):
    """(T, P) read off the rendered text; independent of the AST walkers."""
    s = render(e)
    return len(TERM_RE.findall(s)), s.count("+")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(number, title): acceptance criterion checked by a test"
    )


_results = {}


def pytest_runtest_logreport(report):
    crit = _criteria.get(report.nodeid)
    if crit is None:
        return
    number, title = crit
    ok, _ = _results.get(number, (True, title))
    if report.when == "call" or report.failed:
        _results[number] = (ok and not report.failed, title)


_criteria = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        ok, title = _results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def fresh_rng():
    import numpy as np

    return np.random.default_rng(12345)
