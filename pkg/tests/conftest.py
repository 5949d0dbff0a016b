import itertools

import pytest
from hypothesis import strategies as st

from locallab.graph import Graph


@st.composite
def graphs(draw, min_n=1, max_n=10, connected=False):
    """Small simple graphs; ``connected`` adds a random spanning tree first."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = set()
    if connected and n > 1:
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            chosen.add((u, v))
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), max_size=2 * n, unique=True))
        chosen.update(extra)
    return Graph(n, sorted(chosen))


@pytest.fixture
def triangle():
    return Graph(3, [(0, 1), (1, 2), (0, 2)])
