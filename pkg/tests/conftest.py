"""Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""

import pytest

_CRITERIA: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or rep.failed):
        return
    number, title = marker.args
    status = "PASS" if rep.passed else "FAIL"
    _CRITERIA[number] = (title, status, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status, seconds = _CRITERIA[number]
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} ({seconds:.1f} s)")
    passed = sum(status == "PASS" for _, status, _ in _CRITERIA.values())
    terminalreporter.write_line(f"{passed}/{len(_CRITERIA)} criteria passed")
