"""Brute-force ground truth: triangle-free subgraph and matching counts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import kernels
from ._pykernels import _packing_bound
from .errors import InvalidInput, TooLarge
from .graph import Graph, triangle_count, two_coloring

MAX_CENSUS_EDGES = 25
MAX_MATCHING_N = 30
MAX_PERMANENT_PART = 20


@dataclass(frozen=True)
class TriFreeCensus:
    """``counts[i]`` is the number of triangle-free ``i``-edge subgraphs."""

    counts: tuple[int, ...]

    def padded(self, length: int) -> tuple[int, ...]:
        return self.counts + (0,) * (length - len(self.counts))


@dataclass(frozen=True)
class MatchingCensus:
    n: int
    counts: tuple[int, ...]

    @property
    def perfect(self) -> int:
        if self.n % 2:
            return 0
        half = self.n // 2
        return self.counts[half] if half < len(self.counts) else 0


@dataclass(frozen=True)
class MaxTriFree:
    max_edges: int
    count: int
    deletion_sets: tuple[frozenset, ...]
    nodes: int

    def __iter__(self):
        return iter((self.max_edges, self.count))


def trifree_census_exhaustive(g: Graph, max_edges: int = MAX_CENSUS_EDGES, impl=None) -> TriFreeCensus:
    edges = list(g.edges())
    if len(edges) > max_edges:
        raise TooLarge(f"census enumerates 2^{len(edges)} subsets; cap is {max_edges} edges")
    return TriFreeCensus(tuple(kernels.trifree_census(g.n, edges, impl=impl)))


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    """Triangles as sorted vertex triples, in lexicographic order."""
    out = []
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if not g.has_edge(a, b):
                continue
            common = g.adj[a] & g.adj[b] & ~((1 << (b + 1)) - 1)
            c = b + 1
            common >>= c
            while common:
                if common & 1:
                    out.append((a, b, c))
                common >>= 1
                c += 1
    return out


def max_trifree_count(g: Graph, impl=None) -> MaxTriFree:
    """Size and number of maximum triangle-free subgraphs.

    Minimum triangle hitting sets are searched by branch-and-bound with
    iterative deepening on the deletion budget. Every deletion set found is
    deduplicated and its surviving subgraph re-checked for triangles.
    """
    edges = list(g.edges())
    index = {e: i for i, e in enumerate(edges)}
    tris = []
    for a, b, c in triangles(g):
        tris.append((1 << index[(a, b)]) | (1 << index[(a, c)]) | (1 << index[(b, c)]))
    if not tris:
        return MaxTriFree(len(edges), 1, (frozenset(),), 1)
    budget = _packing_bound(tris, 0, 0)
    total_nodes = 0
    while True:
        found, nodes = kernels.hitting_sets(tris, budget, impl=impl)
        total_nodes += nodes
        if found:
            break
        budget += 1
    unique = set(found)
    sets = []
    for mask in sorted(unique):
        removed = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        if len(removed) != budget or triangle_count(g.with_edges_removed(removed)):
            raise AssertionError(f"hitting-set search returned an invalid deletion set {removed}")
        sets.append(frozenset(removed))
    return MaxTriFree(len(edges) - budget, len(sets), tuple(sets), total_nodes)


def tri_free_decision(g: Graph, k: int) -> bool:
    """Does ``g`` have a triangle-free subgraph with at least ``k`` edges?"""
    if k <= 0:
        return True
    return max_trifree_count(g).max_edges >= k


def count_matchings(g: Graph, max_n: int = MAX_MATCHING_N) -> MatchingCensus:
    """Matchings of ``g`` counted by size.

    Backtracks over vertices in index order: the lowest remaining vertex is
    either left unmatched or matched to a remaining neighbor. Results are
    memoized on the remaining vertex set.
    """
    if g.n > max_n:
        raise TooLarge(f"matching census capped at n <= {max_n}")
    adj = g.adj

    @lru_cache(maxsize=None)
    def count(remaining: int) -> tuple[int, ...]:
        if not remaining:
            return (1,)
        low = remaining & -remaining
        u = low.bit_length() - 1
        rest = remaining ^ low
        acc = list(count(rest))
        nbrs = adj[u] & rest
        while nbrs:
            vb = nbrs & -nbrs
            nbrs ^= vb
            sub = count(rest ^ vb)
            if len(acc) < len(sub) + 1:
                acc.extend([0] * (len(sub) + 1 - len(acc)))
            for i, c in enumerate(sub):
                acc[i + 1] += c
        return tuple(acc)

    counts = count((1 << g.n) - 1)
    while len(counts) > 1 and counts[-1] == 0:
        counts = counts[:-1]
    return MatchingCensus(g.n, counts)


def permanent_perfect_matchings(g: Graph) -> int:
    """Perfect matchings of a bipartite graph as the permanent of its
    biadjacency matrix, expanded row by row over column subsets."""
    color = two_coloring(g)
    if color is None:
        raise InvalidInput("permanent oracle needs a bipartite graph")
    left = [v for v in range(g.n) if color[v] == 0]
    right = [v for v in range(g.n) if color[v] == 1]
    if len(left) != len(right):
        return 0
    k = len(left)
    if k > MAX_PERMANENT_PART:
        raise TooLarge(f"permanent oracle capped at parts of size {MAX_PERMANENT_PART}")
    rows = [sum(1 << j for j, r in enumerate(right) if g.has_edge(l, r)) for l in left]
    ways = {0: 1}
    for row in rows:
        nxt: dict[int, int] = {}
        for used, c in ways.items():
            free = row & ~used
            while free:
                b = free & -free
                free ^= b
                nxt[used | b] = nxt.get(used | b, 0) + c
        ways = nxt
    return ways.get((1 << k) - 1, 0)


def perfect_matchings(g: Graph) -> list[frozenset[tuple[int, int]]]:
    """Every perfect matching of ``g`` as a set of edges ``(u, v)``, ``u < v``."""
    out = []

    def extend(remaining: int, chosen: list[tuple[int, int]]):
        if not remaining:
            out.append(frozenset(chosen))
            return
        low = remaining & -remaining
        u = low.bit_length() - 1
        rest = remaining ^ low
        nbrs = g.adj[u] & rest
        while nbrs:
            vb = nbrs & -nbrs
            nbrs ^= vb
            chosen.append((u, vb.bit_length() - 1))
            extend(rest ^ vb, chosen)
            chosen.pop()

    if g.n % 2 == 0:
        extend((1 << g.n) - 1, [])
    return out


def is_perfect_matching(g: Graph, matching) -> bool:
    covered = 0
    for u, v in matching:
        if not g.has_edge(u, v) or covered >> u & 1 or covered >> v & 1:
            return False
        covered |= (1 << u) | (1 << v)
    return covered == (1 << g.n) - 1


def trifree_census_bruteforce(g: Graph) -> tuple[int, ...]:
    """Independent census by subset enumeration with ``triangle_count`` (small graphs)."""
    edges = list(g.edges())
    counts = [0] * (len(edges) + 1)
    for r in range(len(edges) + 1):
        for sub in combinations(edges, r):
            if triangle_count(Graph.from_edges(g.n, sub)) == 0:
                counts[r] += 1
    return tuple(counts)
