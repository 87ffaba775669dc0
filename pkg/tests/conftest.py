import pytest

from pfmirror.multipoly import BUILTIN_FAMILIES
from pfmirror.pipeline import run_family

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def results():
    """Full pipeline output for the four built-in families at the default order."""
    return {k: run_family(spec) for k, spec in BUILTIN_FAMILIES.items()}


@pytest.fixture
def acceptance_report():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, passed, text):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} {text}"
        print(line)
        ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
