import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_LINES: list[str] = []


class _Run:
    def __init__(self):
        self.failures: list[str] = []
        self.notes: list[str] = []

    def check(self, ok: bool, what: str) -> None:
        (self.notes if ok else self.failures).append(what)


@pytest.fixture
def criterion():
    """Context manager that times a criterion and prints one PASS/FAIL line."""

    @contextmanager
    def run(number: int, limit: float | None = None):
        r = _Run()
        t0 = time.perf_counter()
        error = None
        try:
            yield r
        except Exception as exc:  # reported, then re-raised below
            error = exc
        elapsed = time.perf_counter() - t0
        if limit is not None and elapsed > limit:
            r.failures.append(f"took {elapsed:.1f}s, limit {limit:.0f}s")
        if error is not None:
            r.failures.append(f"{type(error).__name__}: {error}")
        ok = not r.failures
        detail = "; ".join(r.failures if not ok else r.notes)
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s) {detail}"
        _LINES.append(line)
        print(line)
        if error is not None:
            raise error
        assert ok, line

    return run


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
