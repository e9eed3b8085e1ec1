import itertools

import pytest
from hypothesis import strategies as st

from chordalg import Graph


def graph_from_edge_mask(n, mask):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    g = Graph(nodes=range(1, n + 1))
    for bit, (u, v) in enumerate(pairs):
        if mask >> bit & 1:
            g.add_edge(u, v)
    return g


@st.composite
def small_graphs(draw, max_nodes=7):
    n = draw(st.integers(min_value=1, max_value=max_nodes))
    bits = n * (n - 1) // 2
    mask = draw(st.integers(min_value=0, max_value=(1 << bits) - 1))
    return graph_from_edge_mask(n, mask)


def complete_graph(m):
    g = Graph(nodes=range(1, m + 1))
    for u in range(1, m + 1):
        for v in range(u + 1, m + 1):
            g.add_edge(u, v)
    return g


def cycle_graph(m):
    g = Graph(nodes=range(1, m + 1))
    for u in range(1, m):
        g.add_edge(u, u + 1)
    g.add_edge(m, 1)
    return g


def brute_maximal_cliques(g):
    nodes = g.sorted_nodes()
    cliques = []
    for size in range(len(nodes), 0, -1):
        for subset in itertools.combinations(nodes, size):
            if all(g.has_edge(a, b) for a, b in itertools.combinations(subset, 2)):
                s = set(subset)
                if not any(s < c for c in cliques):
                    cliques.append(s)
    return sorted((frozenset(c) for c in cliques), key=sorted)


@pytest.fixture
def k4():
    return complete_graph(4)
