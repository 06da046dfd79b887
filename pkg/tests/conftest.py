"""Shared pytest configuration.

Registers the ``acceptance`` marker and, whenever acceptance tests ran,
prints a one-line verdict per criterion at the end of the session.  The
verdict label is the first line of each acceptance test's docstring, so
the summary reads as a checklist of the guarantees the suite enforces.
"""

from __future__ import annotations

# nodeid -> criterion label, in collection order.
_LABELS: dict[str, str] = {}
# nodeid -> "passed" | "failed" | "skipped"
_RESULTS: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance: heavy end-to-end criterion; summarised one line per test",
    )


def pytest_collection_modifyitems(items):
    for item in items:
        if item.get_closest_marker("acceptance") is None:
            continue
        doc = getattr(item.function, "__doc__", None) or item.name
        _LABELS[item.nodeid] = doc.strip().splitlines()[0].strip()


def pytest_runtest_logreport(report):
    if report.nodeid not in _LABELS:
        return
    if report.when == "call":
        if report.passed:
            _RESULTS[report.nodeid] = "passed"
        elif report.skipped:
            _RESULTS[report.nodeid] = "skipped"
        else:
            _RESULTS[report.nodeid] = "failed"
    elif report.when == "setup" and not report.passed:
        # A fixture failure counts against the criterion it blocks.
        _RESULTS[report.nodeid] = "skipped" if report.skipped else "failed"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    ran = [(nid, label) for nid, label in _LABELS.items() if nid in _RESULTS]
    if not ran:
        return
    words = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}
    markup = {"passed": {"green": True}, "failed": {"red": True}, "skipped": {"yellow": True}}
    terminalreporter.write_sep("=", "acceptance criteria")
    for nid, label in ran:
        status = _RESULTS[nid]
        terminalreporter.write(words[status], **markup[status])
        terminalreporter.line(f"  {label}")
