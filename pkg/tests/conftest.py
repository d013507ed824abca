from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from omac.model import additive_instance


def subsets(ids):
    ids = list(ids)
    for r in range(len(ids) + 1):
        for c in combinations(ids, r):
            yield frozenset(c)


@pytest.fixture
def three_equal():
    # Weight 1 and share 1/4 each, so quality 4.
    return additive_instance([1, 1, 1], ["1/4", "1/4", "1/4"], label="three_equal")


@st.composite
def additive_instances(draw, max_n=7, zero_cost=True):
    n = draw(st.integers(1, max_n))
    weights = draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    low = 0 if zero_cost else 1
    shares = draw(st.lists(st.integers(low, 20), min_size=n, max_size=n))
    return additive_instance(weights, [Fraction(a, 16) * w for a, w in zip(shares, weights)])
