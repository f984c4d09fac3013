import pytest

CRITERIA = {
    1: "relation suite",
    2: "finite-collapse checks",
    3: "word-problem oracle equivalence",
    4: "wreath suite",
    5: "exact-sequence structure",
    6: "stratification suite",
    7: "abelianization suite",
    8: "trajectory compiler suite",
    9: "rendering goldens",
}

_results: dict = {}


@pytest.fixture
def acceptance():
    """Record the verdict of one acceptance criterion, then assert it."""

    def record(number: int, ok: bool, detail: str) -> None:
        _results[number] = (ok, detail)
        assert ok, f"criterion {number} ({CRITERIA[number]}) failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    ran = any(
        "test_acceptance" in rep.nodeid
        for reports in terminalreporter.stats.values()
        for rep in reports
        if hasattr(rep, "nodeid")
    )
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        ok, detail = _results.get(number, (False, "no verdict recorded (test errored)"))
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
