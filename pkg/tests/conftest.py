from __future__ import annotations

import pytest


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def acceptance_log(request):
    return request.config.acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
