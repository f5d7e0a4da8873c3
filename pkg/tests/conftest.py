import pytest

_DETAILS: dict[str, str] = {}
_OUTCOMES: dict[str, tuple[int, str, str]] = {}


@pytest.fixture
def record(request):
    """Attach measured values to the current acceptance criterion."""

    def _record(text: str):
        _DETAILS[request.node.nodeid] = text
        print(text)

    return _record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, title = marker.args
        _OUTCOMES[item.nodeid] = (number, title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (number, title, verdict) in sorted(_OUTCOMES.items(), key=lambda kv: kv[1][0]):
        detail = _DETAILS.get(nodeid, "")
        terminalreporter.write_line(f"criterion {number:>2} {verdict}: {title}" + (f" | {detail}" if detail else ""))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
