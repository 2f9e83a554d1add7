import pytest

_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.get_closest_marker("acceptance"):
        name = item.callspec.params["name"]
        _results.append((name, rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, dt in _results:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}  [{dt:.2f}s]")
