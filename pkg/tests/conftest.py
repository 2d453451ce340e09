import pytest

from diagaut.classify import classify


@pytest.fixture(scope="session")
def sextic_report():
    return classify(6)


@pytest.fixture(scope="session")
def quartic_report():
    return classify(4)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record one pass/fail line; printed in the terminal summary."""

    def record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
