import pytest

ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the summary hook prints them after the run."""

    def record(number: int, ok: bool, text: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {text}"
        ACCEPTANCE.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
