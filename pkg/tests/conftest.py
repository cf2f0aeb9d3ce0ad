"""Emit the acceptance verdict lines after the run, outside capture."""

import support


def pytest_terminal_summary(terminalreporter):
    if support.ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance verdicts")
        for line in support.ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)
