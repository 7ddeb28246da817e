import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label, claim): acceptance criterion, reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label, claim = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _ACCEPTANCE.append((label, "PASS" if rep.passed else "FAIL", claim))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, claim in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {label:<10} {claim}")
