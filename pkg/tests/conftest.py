import random

import pytest

from ratdiag import fixtures
from ratdiag.model import random_valid_model


@pytest.fixture
def coin():
    return fixtures.coin()


@pytest.fixture
def three_line():
    return fixtures.three_line()


@pytest.fixture
def counterexample():
    return fixtures.counterexample()


def random_models(seed, count, m_range=(2, 4), **kw):
    rng = random.Random(seed)
    return [random_valid_model(rng, rng.randint(*m_range), **kw) for _ in range(count)]


_criteria = []


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        _criteria.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)
