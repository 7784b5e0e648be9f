import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_acceptance():
    """Collect one summary line per acceptance criterion for the terminal report."""
    def _record(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
