import contextlib
import time

import pytest

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one acceptance criterion's outcome for the terminal summary."""

    @contextlib.contextmanager
    def record(number: int, name: str):
        start = time.perf_counter()
        notes: list[str] = []
        try:
            yield notes
        except BaseException as exc:
            detail = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            _ACCEPTANCE[number] = f"{number:>2} {name}: FAIL ({detail})"
            raise
        elapsed = time.perf_counter() - start
        extra = "; ".join(notes)
        _ACCEPTANCE[number] = f"{number:>2} {name}: PASS ({elapsed:.1f} s{'; ' + extra if extra else ''})"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[number])
