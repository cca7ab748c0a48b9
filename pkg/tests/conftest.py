import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import acceptance_log  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(acceptance_log.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
