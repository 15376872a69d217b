import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def report():
    """Record and print one pass/fail line for an acceptance criterion."""

    def record(number, name, ok, detail=""):
        line = f"criterion {number} {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        print(line)
        ACCEPTANCE_LINES.append(line)
        return ok

    return record
