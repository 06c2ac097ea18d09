from __future__ import annotations

import pytest

from arrmorse.catalog import SUITE, arrangement
from arrmorse.pipeline import Run

_RUNS = {}


def get_run(name: str, seed: int = 0) -> Run:
    key = (name, seed)
    if key not in _RUNS:
        _RUNS[key] = Run(arrangement(name), seed)
    return _RUNS[key]


@pytest.fixture(params=SUITE)
def suite_run(request) -> Run:
    return get_run(request.param)


@pytest.fixture
def r1() -> Run:
    return get_run("two_points")


@pytest.fixture
def a2() -> Run:
    return get_run("a2")


_ACCEPTANCE: list = []


@pytest.fixture
def criterion_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line[1])
