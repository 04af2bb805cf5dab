import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running stress checks (set PERMQUOT_SLOW=1)")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PERMQUOT_SLOW"):
        return
    skip = pytest.mark.skip(reason="set PERMQUOT_SLOW=1 to run the 6561-point stress checks")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
