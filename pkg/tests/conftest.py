import pytest

_DOCS: dict[str, str] = {}
_OUTCOMES: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.nodeid.split("::")[0].endswith("test_acceptance.py"):
            doc = (getattr(item, "function", None).__doc__ or item.name).strip().splitlines()[0]
            _DOCS[item.nodeid] = doc


def pytest_runtest_logreport(report):
    if report.nodeid not in _DOCS:
        return
    # a setup or teardown failure counts as a failed criterion too
    if report.when == "call" or report.outcome == "failed":
        if _OUTCOMES.get(report.nodeid) != "failed":
            _OUTCOMES[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, doc in _DOCS.items():
        outcome = _OUTCOMES.get(nodeid, "not run")
        tag = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"[{tag}] {doc}")
