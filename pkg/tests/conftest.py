import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from permpoly import gf  # noqa: E402


@pytest.fixture(autouse=True, scope="session")
def _memory_modulus_cache():
    # keep the suite independent of any PERMPOLY_MODULUS_CACHE in the environment
    gf.set_modulus_cache(None)
    yield


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
