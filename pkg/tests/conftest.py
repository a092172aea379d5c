import pytest

_CRITERIA: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance criterion: ``criterion(n, text, ok)``; asserts ``ok``."""
    def record(number: int, text: str, ok: bool):
        _CRITERIA[number] = (text, bool(ok))
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
        assert ok, text
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        text, ok = _CRITERIA[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n}. {text}")
