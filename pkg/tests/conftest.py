import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("default")

SUITE_BUDGET_S = 60.0
_verdicts = {}
_start = time.perf_counter()


@pytest.fixture
def verdict(request):
    """Record one acceptance line: call ``verdict(number, ok, detail)``."""

    def record(number, ok, detail):
        _verdicts[number] = (bool(ok), detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    elapsed = time.perf_counter() - _start
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_verdicts):
        ok, detail = _verdicts[number]
        tr.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'} - {detail}")
    tr.write_line(f"suite runtime: {elapsed:.1f} s "
                  f"({'PASS' if elapsed < SUITE_BUDGET_S else 'FAIL'}, "
                  f"budget {SUITE_BUDGET_S:.0f} s, part of criterion 10)")
