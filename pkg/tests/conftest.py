import pytest

_RESULTS: list[tuple[int, bool, str]] = []


@pytest.fixture
def report():
    """Record one acceptance criterion; the summary prints a line per call."""

    def _report(number: int, ok: bool, detail: str) -> None:
        _RESULTS.append((number, ok, detail))
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail

    return _report


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_RESULTS, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
