from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from ergmlab.errors import InvalidArgument, InvalidInput, UnsupportedSize
from ergmlab.graph import (
    Graph,
    complement,
    complete_bipartite,
    cube,
    format_graph_text,
    from_code,
    induced,
    is_bipartite,
    is_isomorphic_small,
    is_regular,
    num_pairs,
    pair_index,
    pairs,
    parse_graph_text,
    path,
    to_code,
    triangle_count,
    two_coloring,
    wheel,
)


def graphs(max_n=7):
    return st.integers(0, max_n).flatmap(
        lambda n: st.integers(0, (1 << num_pairs(n)) - 1).map(lambda c: from_code(c, n)))


def test_pair_index_is_canonical_order():
    for n in range(1, 9):
        assert [pair_index(u, v, n) for u, v in pairs(n)] == list(range(num_pairs(n)))
        assert pair_index(3, 1, n) == pair_index(1, 3, n) if n > 3 else True


def test_edges_come_out_sorted():
    g = Graph.from_edges(5, [(3, 4), (0, 2), (2, 1), (0, 1)])
    assert list(g.edges()) == [(0, 1), (0, 2), (1, 2), (3, 4)]
    assert g.num_edges() == 4 and g.degree(2) == 2


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(-1, 2)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(InvalidArgument):
        Graph.from_edges(4, edges)


def test_asymmetric_adjacency_rejected():
    with pytest.raises(InvalidArgument):
        Graph(2, (0b10, 0))


def test_triangle_counts():
    assert triangle_count(Graph.complete(3)) == 1
    assert triangle_count(Graph.complete(4)) == 4
    assert triangle_count(Graph.complete(6)) == 20
    assert triangle_count(cube()) == 0
    assert triangle_count(wheel(6)) == 5


@given(graphs())
def test_triangle_count_matches_triples(g):
    brute = sum(all(g.has_edge(a, b) for a, b in combinations(t, 2)) for t in combinations(range(g.n), 3))
    assert triangle_count(g) == brute


@given(graphs())
def test_code_round_trip(g):
    assert from_code(to_code(g), g.n) == g
    assert bin(to_code(g)).count("1") == g.num_edges()


@given(graphs())
def test_text_round_trip(g):
    assert parse_graph_text(format_graph_text(g)) == g


@given(graphs())
def test_complement_is_involution(g):
    assert complement(complement(g)) == g
    assert g.num_edges() + complement(g).num_edges() == num_pairs(g.n)


def test_text_format_errors():
    for bad in ["", "3 2\n0 1\n", "3 1\n1 0\n", "3 2\n0 1\n0 1\n", "x y\n"]:
        with pytest.raises(InvalidInput):
            parse_graph_text(bad)
    assert parse_graph_text("# a comment\n2 1\n0 1\n") == Graph.complete(2)


def test_induced_relabels_in_order():
    g = path(4)  # 0-1-2-3
    assert induced(g, [2, 1, 0]) == Graph.from_edges(3, [(0, 1), (1, 2)])
    assert induced(g, [0, 3]) == Graph.empty(2)
    with pytest.raises(InvalidArgument):
        induced(g, [0, 0])
    with pytest.raises(InvalidArgument):
        induced(g, [7])


def test_isomorphism():
    assert is_isomorphic_small(path(3), Graph.from_edges(3, [(0, 2), (1, 2)]))
    assert not is_isomorphic_small(path(4), Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]))
    with pytest.raises(UnsupportedSize):
        is_isomorphic_small(Graph.empty(9), Graph.empty(9))


def test_named_graphs():
    k33, q3 = complete_bipartite(3, 3), cube()
    for g, m in ((k33, 9), (q3, 12)):
        assert is_regular(g, 3) and is_bipartite(g) and g.num_edges() == m
    assert wheel(6).num_edges() == 10 and wheel(6).degree(0) == 5
    assert not is_bipartite(Graph.complete(3))
    col = two_coloring(q3)
    assert all(col[u] != col[v] for u, v in q3.edges())
