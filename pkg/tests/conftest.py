import pytest

_criteria = []


@pytest.fixture
def criterion():
    """Record a one-line verdict for an acceptance criterion."""

    def record(number, description, passed, detail=""):
        _criteria.append((number, description, passed, detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed, detail in sorted(_criteria):
        verdict = "PASS" if passed else "FAIL"
        line = f"[{verdict}] {number:>2}. {description}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
