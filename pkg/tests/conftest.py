from __future__ import annotations

import pytest
from hypothesis import settings

from pqsym.posets import validate_ranked

settings.register_profile("repro", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repro")


@pytest.fixture
def six_element_poset():
    # two minimal elements, four heights, covers between consecutive blocks
    covers = [(2, 1), (2, 5), (3, 1), (3, 5), (1, 6), (5, 6), (6, 4)]
    return validate_ranked(6, covers)


@pytest.fixture
def chain2():
    return validate_ranked(2, [(1, 2)])


@pytest.fixture
def single():
    return validate_ranked(1, [])


_ACCEPTANCE_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = {}


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[_ACCEPTANCE_KEY]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE_KEY, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log):
        terminalreporter.write_line(log[number])
