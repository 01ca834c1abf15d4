"""Shared pytest wiring.

Echo the acceptance-criteria pass/fail lines in the terminal summary, so they
are visible even when pytest captures per-test output.
"""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "REPORT_LINES", None) if module is not None else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
