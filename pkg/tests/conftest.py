"""Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""

import re

_LINES = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num, slug = int(m.group(1)), m.group(2)
        props = dict(report.user_properties)
        status = "PASS" if report.outcome == "passed" else "FAIL"
        note = props.get("observed", "")
        _LINES[num] = f"criterion {num:2d} {status}  {slug.replace('_', ' ')} ({report.duration:.1f}s){'  ' + note if note else ''}"


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_LINES):
        terminalreporter.write_line(_LINES[num])
