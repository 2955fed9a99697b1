import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import acceptance_log  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(acceptance_log.RESULTS, key=acceptance_log.sort_key):
        ok, note = acceptance_log.RESULTS[key]
        line = f"{'PASS' if ok else 'FAIL'}  criterion {key}"
        terminalreporter.write_line(f"{line}  ({note})" if note else line)
