from __future__ import annotations

import functools

import pytest

from cellule.verify import Session

# filled by test_acceptance; printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@functools.lru_cache(maxsize=None)
def _session(type_label: str, weights: tuple[int, ...] | None) -> Session:
    return Session.make(type_label, list(weights) if weights else None)


@pytest.fixture(scope="session")
def session():
    """``session("C~2", (2, 1, 1))`` returns a cached Session."""

    def get(type_label: str, weights: tuple[int, ...] | None = None) -> Session:
        return _session(type_label, tuple(weights) if weights else None)

    return get


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
