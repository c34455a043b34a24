import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


VERDICTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[VERDICTS] = []


@pytest.fixture
def verdict(request):
    """Record (and print) one acceptance line: ``criterion N: PASS|FAIL (detail)``."""
    lines = request.config.stash[VERDICTS]

    def record(n, ok, detail):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
        print(line)
        lines.append(line)
        return line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[VERDICTS]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
