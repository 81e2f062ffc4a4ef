import pytest

# Lines recorded by the acceptance suite, echoed once at the end of the run.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture
def cfg9():
    from blobalg.combinatorics import AlgebraConfig

    return AlgebraConfig(9, 4, (0, 2))
