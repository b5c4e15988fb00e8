"""Oracle values below were computed once by two independent routes and frozen."""

import random
from math import comb, factorial

import pytest

from ergmlab.errors import InvalidInput, TooLarge
from ergmlab.graph import Graph, complete_bipartite, cube, from_code, path, wheel
from ergmlab.oracles import (
    count_matchings,
    is_perfect_matching,
    max_trifree_count,
    perfect_matchings,
    permanent_perfect_matchings,
    tri_free_decision,
    trifree_census_bruteforce,
    trifree_census_exhaustive,
    triangles,
)
from ergmlab.verify import random_graph

K = Graph.complete

FROZEN_CENSUS = {
    "K3": (K(3), (1, 3, 3, 0)),
    "K4": (K(4), (1, 6, 15, 16, 3, 0, 0)),
    "K5": (K(5), (1, 10, 45, 110, 140, 72, 10, 0, 0, 0, 0)),
    "W6": (wheel(6), (1, 10, 45, 115, 175, 152, 65, 10, 0, 0, 0)),
}


@pytest.mark.parametrize("name", FROZEN_CENSUS)
def test_frozen_census(name):
    g, want = FROZEN_CENSUS[name]
    assert trifree_census_exhaustive(g).counts == want


def test_census_against_subset_enumeration():
    rng = random.Random(4)
    for _ in range(10):
        g = random_graph(6, rng, p=0.5)
        assert trifree_census_exhaustive(g).counts == trifree_census_bruteforce(g)


def test_census_trivia():
    tri_free = cube()
    counts = trifree_census_exhaustive(tri_free).counts
    assert counts == tuple(comb(12, i) for i in range(13))
    assert trifree_census_exhaustive(Graph.empty(3)).counts == (1,)
    assert trifree_census_exhaustive(K(3)).padded(6) == (1, 3, 3, 0, 0, 0)


def test_census_cap():
    with pytest.raises(TooLarge):
        trifree_census_exhaustive(K(8))


def test_triangles_listing():
    assert triangles(K(4)) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert triangles(cube()) == []


@pytest.mark.parametrize("g, edges, count", [
    (K(3), 2, 3),
    (K(4), 4, 3),
    (K(5), 6, 10),      # K2,3 copies: choose the 2-side
    (K(6), 9, 10),      # K3,3 copies: half of C(6,3)
    (wheel(6), 7, 10),
    (cube(), 12, 1),
])
def test_max_trifree(g, edges, count):
    res = max_trifree_count(g)
    assert (res.max_edges, res.count) == (edges, count)
    assert tuple(res) == (edges, count)


def test_max_trifree_matches_census_top():
    rng = random.Random(8)
    for _ in range(25):
        g = random_graph(6, rng, p=0.6)
        census = trifree_census_exhaustive(g).counts
        top = max(i for i, c in enumerate(census) if c)
        res = max_trifree_count(g)
        assert (res.max_edges, res.count) == (top, census[top])


def test_tri_free_decision():
    assert tri_free_decision(K(3), 2) and not tri_free_decision(K(3), 3)
    assert tri_free_decision(Graph.empty(2), 0)


def test_matching_census():
    assert count_matchings(K(4)).counts == (1, 6, 3)
    assert count_matchings(K(6)).counts == (1, 15, 45, 15)
    assert count_matchings(cube()).counts == (1, 12, 42, 44, 9)
    assert count_matchings(path(4)).counts == (1, 3, 1)
    assert count_matchings(K(5)).perfect == 0
    for n in (2, 4, 6, 8):
        assert count_matchings(K(n)).perfect == factorial(n) // (2 ** (n // 2) * factorial(n // 2))


def test_permanent_oracle():
    for k in range(1, 6):
        assert permanent_perfect_matchings(complete_bipartite(k, k)) == factorial(k)
    assert permanent_perfect_matchings(cube()) == 9
    assert permanent_perfect_matchings(complete_bipartite(2, 3)) == 0
    with pytest.raises(InvalidInput):
        permanent_perfect_matchings(K(3))


def test_matching_routes_agree_on_bipartite_graphs():
    rng = random.Random(2)
    checked = 0
    while checked < 30:
        g = random_graph(8, rng, p=0.4)
        try:
            perm = permanent_perfect_matchings(g)
        except InvalidInput:
            continue
        assert perm == count_matchings(g).perfect == len(perfect_matchings(g))
        checked += 1


def test_perfect_matching_enumeration():
    ms = perfect_matchings(complete_bipartite(3, 3))
    assert len(ms) == 6 and len(set(ms)) == 6
    assert all(is_perfect_matching(complete_bipartite(3, 3), m) for m in ms)
    assert not is_perfect_matching(path(4), [(0, 1)])
    assert perfect_matchings(path(3)) == []


def test_matching_cap():
    with pytest.raises(TooLarge):
        count_matchings(Graph.empty(31))


def test_all_small_graphs_max_vs_census():
    for code in range(1 << 6):
        g = from_code(code, 4)
        census = trifree_census_exhaustive(g).counts
        top = max(i for i, c in enumerate(census) if c)
        assert tuple(max_trifree_count(g)) == (top, census[top])
