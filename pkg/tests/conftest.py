import pytest

ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion, reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if rep.failed or (rep.when == "call" and ACCEPTANCE.get(name) != "FAIL"):
        ACCEPTANCE[name] = "FAIL" if rep.failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda n: int(n.split(".")[0])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]}  {name}")
