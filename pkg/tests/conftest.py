import pytest

_ACCEPTANCE: dict[int, dict] = {}



@pytest.fixture
def acceptance_detail(request):
    """Dict the test fills with a short summary shown next to its pass/fail line."""
    m = request.node.get_closest_marker("acceptance")
    entry = _ACCEPTANCE.setdefault(m.args[0], {"title": m.args[1], "detail": {}})
    return entry["detail"]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is None or rep.when == "teardown":
        return
    entry = _ACCEPTANCE.setdefault(m.args[0], {"title": m.args[1], "detail": {}})
    # fixture setup time counts toward the criterion that first needs it
    entry["seconds"] = entry.get("seconds", 0.0) + rep.duration
    if rep.when == "call" or rep.failed:
        entry["passed"] = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        e = _ACCEPTANCE[n]
        status = "PASS" if e.get("passed") else "FAIL"
        detail = ", ".join(f"{k}={v}" for k, v in e["detail"].items())
        tr.write_line(f"[{status}] {n}. {e['title']} ({e.get('seconds', 0):.1f}s) {detail}")
