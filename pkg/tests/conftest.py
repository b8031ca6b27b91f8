import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from diffgames.graph import LabeledGraph, path  # noqa: E402


@st.composite
def small_graphs(draw, min_n=1, max_n=6, labels=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [p for p in pairs if draw(st.booleans())]
    lab = {}
    if labels:
        for v in range(n):
            if draw(st.booleans()):
                lab[v] = {"red"}
    return LabeledGraph.from_edges(n, edges, lab)


@pytest.fixture
def P3():
    return path(3)


@pytest.fixture
def P4():
    return path(4)
