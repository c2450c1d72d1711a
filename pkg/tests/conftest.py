import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from hypermod.hypercore import Hypergraph, Partition

sys.path.insert(0, str(Path(__file__).parent))


def make_h0():
    return Hypergraph(4, [(1, 2), (1, 2, 3), (3, 4)])


def make_two_triangles():
    tri = [(1, 2), (2, 3), (1, 3), (1, 2, 3)]
    return Hypergraph(6, tri + [tuple(v + 3 for v in e) for e in tri])


@pytest.fixture
def h0():
    return make_h0()


@pytest.fixture
def p0():
    return Partition([1, 1, 2, 2])


@pytest.fixture
def two_triangles():
    return make_two_triangles()


@st.composite
def hypergraphs(draw, min_n=2, max_n=10, max_size=4, max_edges=12, allow_loops=False,
                max_weight=3):
    n = draw(st.integers(min_n, max_n))
    low = 1 if allow_loops else 2
    edge = st.lists(st.integers(1, n), min_size=low, max_size=min(max_size, n), unique=True)
    edges = draw(st.lists(edge, min_size=1, max_size=max_edges))
    weights = draw(st.lists(st.integers(1, max_weight), min_size=len(edges),
                            max_size=len(edges)))
    H = Hypergraph(n, edges, weights)
    if not allow_loops and H.num_edges == 0:
        H = Hypergraph(n, [(1, 2)])
    return H


@st.composite
def hypergraph_and_partition(draw, **kw):
    H = draw(hypergraphs(**kw))
    labels = draw(st.lists(st.integers(1, H.n), min_size=H.n, max_size=H.n))
    return H, Partition(labels)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
