"""Shared pytest configuration: per-criterion PASS/FAIL report for the acceptance suite."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_results: dict[int, dict] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            entry = _results.setdefault(mark.kwargs["number"], {"title": mark.kwargs["title"], "outcomes": []})
            item.user_properties.append(("criterion", mark.kwargs["number"]))
            entry["expected"] = entry.get("expected", 0) + 1


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _results[crit]["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        outcomes = entry["outcomes"]
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes) and len(outcomes) >= entry["expected"]:
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']}")
