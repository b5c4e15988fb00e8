"""Labeled simple graphs stored as per-vertex neighbor bitsets.

Vertices are ``0 .. n-1`` with ``n <= 64``. Potential edges are ordered
lexicographically on ``(u, v)`` with ``u < v``; bit ``k`` of a graph code is
the ``k``-th pair in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from .errors import InvalidArgument, InvalidInput, UnsupportedSize

MAX_VERTICES = 64
MAX_ISO_VERTICES = 8


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(u: int, v: int, n: int) -> int:
    """Position of the pair ``{u, v}`` in the canonical edge order."""
    if u > v:
        u, v = v, u
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``adj[u]`` is an integer whose bit ``v`` is set iff ``{u, v}`` is an edge.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise InvalidArgument(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise InvalidArgument("adjacency length does not match n")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise InvalidArgument(f"vertex {u} has neighbors >= n")
            if row >> u & 1:
                raise InvalidArgument(f"self-loop at vertex {u}")
            r = row
            while r:
                low = r & -r
                v = low.bit_length() - 1
                if not self.adj[v] >> u & 1:
                    raise InvalidArgument(f"asymmetric adjacency between {u} and {v}")
                r ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        adj = [0] * n
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise InvalidArgument(f"bad edge ({u}, {v}) for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << u) for u in range(n)))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            r = self.adj[u] >> (u + 1)
            v = u + 1
            while r:
                if r & 1:
                    yield (u, v)
                r >>= 1
                v += 1

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def with_edges_removed(self, removed: Iterable[Sequence[int]]) -> Graph:
        adj = list(self.adj)
        for u, v in removed:
            if not adj[u] >> v & 1:
                raise InvalidArgument(f"({u}, {v}) is not an edge")
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def triangle_count(g: Graph) -> int:
    """Number of vertex triples that induce a triangle."""
    total = 0
    adj = g.adj
    for u in range(g.n):
        higher = adj[u] >> (u + 1) << (u + 1)
        r = higher
        while r:
            low = r & -r
            v = low.bit_length() - 1
            # common neighbors w > v
            total += (adj[u] & adj[v] & ~((low << 1) - 1)).bit_count()
            r ^= low
    return total


def induced(g: Graph, vs: Sequence[int]) -> Graph:
    """Subgraph induced by ``vs``; vertex ``i`` of the result is ``vs[i]``."""
    if len(set(vs)) != len(vs):
        raise InvalidArgument(f"duplicate vertex in {tuple(vs)}")
    for v in vs:
        if not 0 <= v < g.n:
            raise InvalidArgument(f"vertex {v} out of range for n={g.n}")
    k = len(vs)
    adj = [0] * k
    for i in range(k):
        row = g.adj[vs[i]]
        for j in range(k):
            if row >> vs[j] & 1:
                adj[i] |= 1 << j
    return Graph(k, tuple(adj))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ (1 << u) ^ row for u, row in enumerate(g.adj)))


def is_isomorphic_small(a: Graph, b: Graph) -> bool:
    """Brute-force isomorphism test for graphs on at most 8 vertices."""
    if a.n > MAX_ISO_VERTICES or b.n > MAX_ISO_VERTICES:
        raise UnsupportedSize(f"isomorphism test limited to n <= {MAX_ISO_VERTICES}")
    if a.n != b.n:
        return False
    if a.num_edges() != b.num_edges():
        return False
    if sorted(map(int.bit_count, a.adj)) != sorted(map(int.bit_count, b.adj)):
        return False
    a_edges = list(a.edges())
    for perm in permutations(range(a.n)):
        if all(b.adj[perm[u]] >> perm[v] & 1 for u, v in a_edges):
            return True
    return False


def to_code(g: Graph) -> int:
    code = 0
    for u, v in g.edges():
        code |= 1 << pair_index(u, v, g.n)
    return code


def from_code(code: int, n: int) -> Graph:
    if not 0 <= code < 1 << num_pairs(n):
        raise InvalidArgument(f"code {code} out of range for n={n}")
    adj = [0] * n
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if code >> k & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            k += 1
    return Graph(n, tuple(adj))


def two_coloring(g: Graph) -> list[int] | None:
    """A proper 2-coloring of ``g`` or ``None`` if ``g`` is not bipartite."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in range(g.n):
                if g.adj[u] >> v & 1:
                    if color[v] < 0:
                        color[v] = 1 - color[u]
                        stack.append(v)
                    elif color[v] == color[u]:
                        return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def is_regular(g: Graph, degree: int) -> bool:
    return all(row.bit_count() == degree for row in g.adj)


# -- named graphs -------------------------------------------------------------

def path(k: int) -> Graph:
    """Path on ``k`` vertices ``0 - 1 - ... - k-1`` (``path(3)`` is P2)."""
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cube() -> Graph:
    """The 3-cube Q3: vertices are 3-bit strings, edges flip one bit."""
    return Graph.from_edges(8, [(x, x ^ (1 << i)) for x in range(8) for i in range(3) if x < x ^ (1 << i)])


def wheel(k: int) -> Graph:
    """Wheel on ``k`` vertices: hub 0 joined to the cycle ``1 .. k-1``."""
    rim = list(range(1, k))
    edges = [(0, v) for v in rim]
    edges += [(rim[i], rim[(i + 1) % len(rim)]) for i in range(len(rim))]
    return Graph.from_edges(k, edges)


# -- text format --------------------------------------------------------------

def parse_graph_text(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-based, u < v)."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InvalidInput("empty graph text")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        body = [(int(a), int(b)) for a, b in lines[1:]]
    except (ValueError, IndexError) as exc:
        raise InvalidInput(f"malformed graph text: {exc}") from None
    if len(body) != m:
        raise InvalidInput(f"header declares {m} edges, found {len(body)}")
    seen = set()
    for u, v in body:
        if not u < v:
            raise InvalidInput(f"edge ({u}, {v}) must satisfy u < v")
        if (u, v) in seen:
            raise InvalidInput(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
    return Graph.from_edges(n, body)


def format_graph_text(g: Graph) -> str:
    edges = list(g.edges())
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"
