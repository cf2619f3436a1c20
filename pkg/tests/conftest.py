import itertools

import pytest
from hypothesis import settings

from flagcalc.cli import parse

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)]
BATTERY_TYPES = [("A", r) for r in range(1, 5)] + [("B", r) for r in range(2, 5)]
BATTERY_TYPES += [("C", r) for r in range(2, 5)] + [("D", 4), ("G", 2), ("F", 4)]


def crossings(rank):
    for k in range(1, rank + 1):
        yield from itertools.combinations(range(1, rank + 1), k)


def all_models(types):
    from flagcalc.parabolic import make_model

    for fam, r in types:
        for cr in crossings(r):
            yield make_model([(fam, r)], [list(cr)])


@pytest.fixture
def model():
    return parse
