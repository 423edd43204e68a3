import time

import pytest

ACCEPTANCE_LINES = {}
SUITE_LIMIT_S = 600
_start = time.monotonic()


@pytest.fixture
def acceptance():
    """Record the one-line verdict for an acceptance criterion."""

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[number] = (ok, line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    elapsed = time.monotonic() - _start
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        ok, line = ACCEPTANCE_LINES[number]
        if number == 11:
            timing_ok = elapsed < SUITE_LIMIT_S
            verdict = "PASS" if ok and timing_ok else "FAIL"
            line = line.replace("PASS", verdict, 1).replace("FAIL", verdict, 1)
            line += f"; full suite {elapsed:.0f} s (limit {SUITE_LIMIT_S} s)"
        tr.write_line(line)
