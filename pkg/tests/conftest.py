"""Collects one status line per acceptance criterion and prints them at the end."""

import time

import pytest

_LINES = {}


class _Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.detail = ""
        self.t0 = time.perf_counter()

    @property
    def elapsed(self):
        return time.perf_counter() - self.t0

    def check_runtime(self):
        assert self.elapsed < self.limit, f"runtime {self.elapsed:.1f} s exceeds {self.limit} s"


@pytest.fixture
def criterion(request):
    """``criterion(number, title, limit_seconds)`` starts the clock for one criterion."""
    made = []

    def start(number, title, limit):
        c = _Criterion(number, title, limit)
        made.append(c)
        return c

    yield start
    rep = getattr(request.node, "rep_call", None)
    for c in made:
        ok = rep is not None and rep.passed
        line = f"criterion {c.number:2d} {'PASS' if ok else 'FAIL'}  {c.title}  ({c.elapsed:.2f} s) {c.detail}"
        _LINES[c.number] = line
        print(line)


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_LINES):
            terminalreporter.write_line(_LINES[k])
