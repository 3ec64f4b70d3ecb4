import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from johnson_turan import graph
from johnson_turan.combinatorics import GraphParams, Vertex, binomial
from johnson_turan.errors import DomainError
from johnson_turan.graph import (
    VertexSet,
    adjacent,
    induced_edge_count,
    neighbors,
    pairwise_edge_count,
    random_vertex_set,
    total_counts,
)

from oracles import edge_count, subsets


def fs(v):
    return frozenset(v.support())


def test_adjacent_examples():
    p = GraphParams(5, 3, 1)
    a = Vertex.from_elements([1, 2, 3], 5)
    assert not adjacent(a, a, p)
    assert adjacent(a, Vertex.from_elements([1, 4, 5], 5), p)
    assert not adjacent(a, Vertex.from_elements([1, 2, 4], 5), p)
    with pytest.raises(DomainError):
        adjacent(a, Vertex.from_elements([1, 2, 3], 6), p)


@pytest.mark.parametrize("n,r,s,degree", [(5, 3, 1, 3), (5, 2, 0, 3), (4, 3, 2, 3)])
def test_neighbors_degree(n, r, s, degree):
    p = GraphParams(n, r, s)
    for v in p.vertices():
        nb = neighbors(v, p)
        brute = {u for u in subsets(n, r) if u != fs(v) and len(u & fs(v)) == s}
        assert {fs(u) for u in nb} == brute
        assert len(nb) == degree
        assert list(nb) == sorted(nb)


def test_induced_edge_count_examples():
    p = GraphParams(5, 3, 1)
    assert induced_edge_count(VertexSet.of(p, [[1, 2, 3]])) == 0
    q = GraphParams(4, 3, 1)
    assert induced_edge_count(VertexSet.full(q)) == 0
    assert induced_edge_count(VertexSet.full(GraphParams(4, 2, 1))) == 12


@pytest.mark.parametrize("n,r,s,expected", [(5, 2, 0, (10, 3, 15)), (5, 3, 1, (10, 3, 15)), (4, 3, 0, (4, 0, 0))])
def test_total_counts_examples(n, r, s, expected):
    assert tuple(total_counts(GraphParams(n, r, s))) == expected


def test_handshake_against_construction():
    for n in range(1, 11):
        for r in range(1, n + 1):
            if binomial(n, r) > 5000:
                continue
            for s in range(r):
                p = GraphParams(n, r, s)
                full = VertexSet.full(p)
                degrees = [a.bit_count() for a in full.adjacency]
                counts = total_counts(p)
                assert sum(degrees) == 2 * counts.edges
                assert set(degrees) <= {counts.degree}


def test_materialized_path_matches_pairwise():
    p = GraphParams(9, 3, 1)
    rng = random.Random(3)
    for size in (0, 5, 70, 84):
        w = random_vertex_set(p, size, rng)
        assert graph.induced_edge_count(w) == pairwise_edge_count(w) == edge_count([fs(v) for v in w], 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.integers(0, 35), st.integers(0, 35))
def test_monotone_under_inclusion(seed, a, b):
    p = GraphParams(7, 3, 1)
    rng = random.Random(seed)
    big = random_vertex_set(p, max(a, b), rng)
    small = VertexSet(big.members[: min(a, b)], p)
    assert induced_edge_count(small) <= induced_edge_count(big)
    assert induced_edge_count(big) <= len(big) * (len(big) - 1) // 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31))
def test_adjacency_symmetric_irreflexive(seed):
    rng = random.Random(seed)
    p = GraphParams(rng.randint(4, 9), 3, rng.randint(0, 2))
    w = random_vertex_set(p, min(12, p.vertex_count), rng)
    for u in w:
        assert not adjacent(u, u, p)
        for v in w:
            assert adjacent(u, v, p) == adjacent(v, u, p)


def test_vertex_set_rejects_duplicates_and_foreign_vertices():
    p = GraphParams(5, 3, 1)
    with pytest.raises(DomainError):
        VertexSet.of(p, [[1, 2, 3], [3, 2, 1]])
    with pytest.raises(DomainError):
        VertexSet.of(p, [[1, 2]])


def test_vertex_set_json_roundtrip():
    p = GraphParams(5, 3, 1)
    w = VertexSet.of(p, [[1, 2, 3], [1, 4, 5]])
    assert w.dumps() == "[[1, 2, 3], [1, 4, 5]]"
    assert VertexSet.from_json(p, json.loads(w.dumps())) == w
