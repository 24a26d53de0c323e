"""Shared fixtures.

The acceptance tests record one line per criterion; the terminal summary
hook replays them at the end of the run so the pass/fail ledger is visible
even when output capture is on.
"""

import time
from contextlib import contextmanager

import pytest

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance():
    @contextmanager
    def criterion(index, title, budget=None):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException:
            ACCEPTANCE_LINES.append(f"AC{index:02d} {title}: FAIL")
            raise
        elapsed = time.perf_counter() - t0
        if budget is not None and elapsed >= budget:
            ACCEPTANCE_LINES.append(
                f"AC{index:02d} {title}: FAIL (took {elapsed:.1f}s, budget {budget:.0f}s)"
            )
            raise AssertionError(
                f"criterion {index} exceeded its time budget: "
                f"{elapsed:.1f}s >= {budget:.0f}s"
            )
        line = f"AC{index:02d} {title}: PASS ({elapsed:.2f}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
