"""Shared test plumbing: collects acceptance verdicts and prints them at the end."""
import pytest

ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, checks: list[tuple[str, bool]]) -> None:
    """Store one verdict line for criterion ``number`` and fail unless all checks pass."""
    passed = all(ok for _, ok in checks)
    detail = "; ".join(f"{'ok' if ok else 'MISS'} {label}" for label, ok in checks)
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)
    if not passed:
        pytest.fail(line, pytrace=False)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
