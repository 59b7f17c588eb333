from __future__ import annotations

import pytest

from tropclust import acceptance

_LINES: list = []
_RESULTS: dict = {}


@pytest.fixture(scope="session")
def criterion():
    """Run an acceptance criterion once per session and remember its line."""

    def get(number: int) -> acceptance.CheckResult:
        if number not in _RESULTS:
            res = acceptance.run_criterion(number, seed=0)
            _RESULTS[number] = res
            _LINES.append(res.line())
        return _RESULTS[number]

    return get


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_LINES, key=lambda s: int(s.split(".")[0].split()[-1])):
        terminalreporter.write_line(line)
