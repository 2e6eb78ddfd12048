import json

import pytest

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict = {}


def table_content(table) -> str:
    """Everything a table asserts about walks, without provenance metadata."""
    data = table.to_json()
    data.pop("meta", None)
    return json.dumps(data, sort_keys=True)


@pytest.fixture
def content():
    return table_content


@pytest.fixture
def criterion(request):
    """Record the outcome of the test's acceptance criterion; a test that dies early stays FAIL."""
    number = request.node.get_closest_marker("criterion").args[0]
    ACCEPTANCE[number] = (False, "did not complete")

    def record(passed: bool, detail: str = ""):
        ACCEPTANCE[number] = (bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
