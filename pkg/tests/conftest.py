import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """One visible PASS/FAIL line per acceptance criterion."""
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and "test_acceptance" in item.nodeid:
        tr = item.config.pluginmanager.getplugin("terminalreporter")
        if tr is not None:
            status = "PASS" if rep.passed else "FAIL"
            tr.write_line(f"[acceptance] {status} :: {item.name}")
