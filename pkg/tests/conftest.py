"""Collects one pass/fail line per acceptance criterion and prints them at the end."""

import pytest

ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Call ``criterion(label)`` first; the test outcome decides the recorded status."""
    state = {}

    def start(label):
        state["label"] = label

    yield start
    if "label" in state:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        ACCEPTANCE_RESULTS[request.node.name] = (state["label"], ok)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS):
        label, ok = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
