import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from apn_horizon.field import get_field  # noqa: E402
from apn_horizon.subfield import view_for  # noqa: E402


@pytest.fixture(scope="session")
def fields():
    return {m: get_field(m) for m in range(2, 17)}


@pytest.fixture(scope="session")
def views(fields):
    return {m: view_for(ctx) for m, ctx in fields.items() if m % 2 == 0}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
