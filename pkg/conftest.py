"""Shared acceptance-verdict reporting.

Acceptance tests call record() once per criterion; the terminal summary
prints one PASS/FAIL line for each so the outcome is visible even when
pytest captures per-test output.
"""

VERDICTS = []


def record(criterion: int, ok: bool, detail: str = ""):
    VERDICTS.append((criterion, bool(ok), detail))
    assert ok, f"criterion {criterion} failed: {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(VERDICTS):
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {criterion}: {status}{suffix}")
