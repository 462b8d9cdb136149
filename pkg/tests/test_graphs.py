import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from surfk6.graphs import (
    Graph,
    GraphError,
    apex_graph,
    from_graph6,
    petersen,
    random_graph,
    random_planar_graph,
    to_graph6,
    triangulated_grid,
)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.floats(0, 1), st.integers(0, 10**6))
def test_graph6_round_trip(n, p, seed):
    g = random_graph(n, p, random.Random(seed))
    assert from_graph6(to_graph6(g)) == g


def test_graph6_header_and_errors():
    assert from_graph6(">>graph6<<" + to_graph6(petersen())) == petersen()
    with pytest.raises(GraphError):
        from_graph6("~~~")


def test_from_edges_rejects_bad_input():
    for edges in ([(0, 0)], [(0, 3)]):
        with pytest.raises(GraphError):
            Graph.from_edges(3, edges)


def test_basic_counts():
    assert Graph.complete(6).m == 15
    assert len(Graph.complete(4).triangles()) == 4
    assert Graph.cycle(6).triangles() == []
    p = petersen()
    assert (p.n, p.m, p.min_degree()) == (10, 15, 3)
    assert not p.triangles()


@pytest.mark.parametrize("seed", range(5))
def test_random_planar_graph(seed):
    g = random_planar_graph(15, random.Random(seed))
    assert g.m == 3 * 15 - 6
    assert nx.check_planarity(g.to_networkx())[0]
    assert g.min_degree() >= 3


def test_triangulated_grid_and_apex():
    g = triangulated_grid(4, 5, random.Random(0))
    assert (g.n, g.m) == (20, 4 * 4 + 3 * 5 + 12)
    assert nx.check_planarity(g.to_networkx())[0]
    a = apex_graph(g)
    assert a.n == 21 and a.degree(20) == 20


def test_induced_and_relabel():
    g = Graph.cycle(5)
    sub, verts = g.induced([0, 1, 2])
    assert sub.m == 2 and verts == [0, 1, 2]
    perm = [4, 3, 2, 1, 0]
    assert g.relabel(perm).edge_set == frozenset(
        tuple(sorted((perm[u], perm[v]))) for u, v in g.edges)
