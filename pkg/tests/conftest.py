"""Shared pytest wiring.

Acceptance tests record one verdict line each.  Echo them after the run
summary so a plain `pytest -v` always shows them, whatever the capture
mode; without this hook fd-level capture would swallow the lines on
passing runs.
"""

import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    for line in getattr(mod, "VERDICT_LINES", []) if mod else []:
        terminalreporter.write_line(line)
