from functools import lru_cache

import pytest

from oadim.arrays import FrequencyVector, OAParams
from oadim.oracle import enumerate_all

LATIN2 = (1, 0, 0, 1, 0, 1, 1, 0)


@lru_cache(maxsize=None)
def solutions(n, k, s, lam=1):
    res = enumerate_all(OAParams(n, k, s, lam), budget_seconds=300)
    assert res.complete
    return tuple(res.solutions)


# every desk-scale case the suite enumerates; all finish in well under a second
DESK_CASES = [
    (2, 2, 1, 1), (2, 3, 1, 1), (2, 3, 2, 1), (2, 4, 3, 1), (2, 2, 2, 1), (2, 3, 3, 1),
    (3, 2, 1, 1), (3, 3, 1, 1), (3, 3, 2, 1), (3, 4, 2, 1), (3, 3, 3, 1), (2, 4, 1, 1),
    (2, 3, 1, 2), (2, 3, 2, 2), (4, 2, 1, 1), (4, 3, 2, 1), (2, 4, 2, 2), (2, 5, 4, 1),
    (2, 4, 1, 2), (2, 5, 3, 2), (3, 3, 2, 3),
]


@pytest.fixture
def latin2():
    return FrequencyVector(OAParams(2, 3, 2, 1), LATIN2)
