from __future__ import annotations

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from monosplit.automorphism import (
    _closure,
    all_automorphisms,
    brute_force_automorphism_count,
    graph_automorphisms,
)
from monosplit.errors import ArgumentError
from monosplit.polygon import exchange_graph


def oracle_count(adj) -> int:
    g = nx.Graph()
    g.add_nodes_from(range(len(adj)))
    g.add_edges_from((v, w) for v, ns in enumerate(adj) for w in ns)
    return sum(1 for _ in GraphMatcher(g, g).isomorphisms_iter())


@pytest.mark.parametrize("d,n,order", [(5, 3, 10), (6, 3, 12), (7, 3, 14), (8, 4, 16), (10, 4, 20)])
def test_exchange_graph_symmetry(d, n, order):
    adj = exchange_graph(d, n).adjacency
    got, gens = graph_automorphisms(adj)
    assert got == order == oracle_count(adj)
    assert len(_closure(gens, len(adj))) == order


@pytest.mark.parametrize("adj", [
    [[1], [0, 2], [1]],
    [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]],
    [[1, 3], [0, 2], [1, 3], [0, 2]],
    [[1, 2], [0], [0, 3], [2]],
])
def test_small_graphs_against_brute_force(adj):
    assert len(all_automorphisms(adj)) == brute_force_automorphism_count(adj) == oracle_count(adj)


def test_petersen():
    g = nx.petersen_graph()
    adj = [sorted(g.neighbors(v)) for v in range(10)]
    assert len(all_automorphisms(adj)) == 120


def test_every_result_is_an_automorphism():
    adj = exchange_graph(6, 3).adjacency
    edges = {(a, b) for a, ns in enumerate(adj) for b in ns}
    for p in all_automorphisms(adj):
        assert {(p[a], p[b]) for a, b in edges} == edges


def test_disconnected_rejected():
    with pytest.raises(ArgumentError):
        all_automorphisms([[1], [0], [3], [2]])
