"""Print one PASS/FAIL line per acceptance criterion after the run."""

from __future__ import annotations

import re

_ACCEPTANCE_PATTERN = re.compile(r"test_acceptance\.py::test_c(\d+)_(\w+)")
_outcomes: dict[tuple[int, str], str] = {}


def pytest_runtest_logreport(report):
    match = _ACCEPTANCE_PATTERN.search(report.nodeid)
    if not match:
        return
    key = (int(match.group(1)), match.group(2))
    if report.when == "call":
        _outcomes[key] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and report.outcome in ("failed", "skipped"):
        _outcomes[key] = report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for (number, slug), outcome in sorted(_outcomes.items()):
        terminalreporter.write_line(f"  criterion {number:02d} {slug}: {outcome}")
