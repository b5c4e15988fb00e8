"""Executable hardness constructions.

* ``build_trifree_ergm``: edge weights ``alpha`` on G, ``beta`` elsewhere and on
  every triangle, so that ``floor(Z)`` in base ``2**alpha`` lists the
  triangle-free subgraph counts of G.
* ``gap_instance``: the same model at the alpha that separates yes- and
  no-instances of TRI-FREE by more than any ``2**f_log`` approximation factor.
* ``snub`` and ``matching_to_trifree_subgraph``: the gadget turning perfect
  matchings of a 3-regular bipartite graph into maximum triangle-free subgraphs.
* ``build_matching_ergm``: a K2/P2 model whose digits count matchings by size.
* ``feature_replace`` / ``recover_old_partition``: simulate an indicator on a
  small pattern by indicators on a larger one and read the old partition
  function back out of the new one.
* ``dichotomy_classify``: polynomial vs #P-hard feature sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import Mapping, Sequence

from .dyadic import DigitVector, Dyadic, integer_part_digits, pow2, shift_window
from .errors import InvalidArgument, InvalidEmbedding, InvalidInput, TooLarge, UnsupportedFeature
from .graph import (
    Graph,
    complement,
    format_graph_text,
    induced,
    is_bipartite,
    is_regular,
    num_pairs,
    pairs,
    parse_graph_text,
    path,
)
from .model import COUNT, INDICATOR, ErgmModel, indicator, iso_count, weight_range

K2 = Graph.complete(2)
K3 = Graph.complete(3)
P2 = path(3)


# -- trifree model ------------------------------------------------------------

def trifree_beta(n: int, alpha: int) -> int:
    c = num_pairs(n)
    return -c * alpha - c - 1


@dataclass(frozen=True)
class TrifreeParams:
    alpha: int
    beta: int
    source: Graph


def build_trifree_ergm(g: Graph, alpha: int) -> tuple[ErgmModel, TrifreeParams]:
    """One K2 indicator per vertex pair (``alpha`` on edges of ``g``, ``beta``
    on non-edges) plus a triangle count weighted ``beta``."""
    if alpha < 1:
        raise InvalidArgument("alpha must be >= 1")
    beta = trifree_beta(g.n, alpha)
    feats = [indicator(K2, (u, v), alpha if g.has_edge(u, v) else beta) for u, v in pairs(g.n)]
    feats.append(iso_count(K3, beta))
    meta = {"kind": "trifree", "alpha": alpha, "beta": beta, "source": format_graph_text(g)}
    return ErgmModel(g.n, tuple(feats), meta), TrifreeParams(alpha, beta, g)


def trifree_params_from_model(m: ErgmModel) -> TrifreeParams | None:
    meta = m.metadata
    if meta.get("kind") not in ("trifree", "gap"):
        return None
    return TrifreeParams(int(meta["alpha"]), int(meta["beta"]), parse_graph_text(meta["source"]))


def check_trifree_model(m: ErgmModel) -> list[str]:
    """Names of the trifree-model invariants ``m`` violates (empty if none)."""
    p = trifree_params_from_model(m)
    if p is None:
        return ["metadata: model carries no trifree parameters"]
    problems = []
    expected_beta = trifree_beta(m.n, p.alpha)
    if p.beta != expected_beta:
        problems.append(f"beta formula: recorded beta={p.beta}, expected {expected_beta}")
    expected, _ = build_trifree_ergm(p.source, p.alpha)
    if len(m.features) != len(expected.features):
        problems.append(f"feature count: {len(m.features)} != {len(expected.features)}")
    for i, (got, want) in enumerate(zip(m.features, expected.features)):
        if got != want:
            same_shape = got.kind == want.kind and got.pattern == want.pattern and got.vertices == want.vertices
            if not same_shape:
                problems.append(f"feature {i}: structure differs")
            else:
                role = "beta weight" if want.weight == expected_beta else "alpha weight"
                problems.append(f"{role}: feature {i} has weight {got.weight}, expected {want.weight}")
    return problems


# -- inapproximability gap ----------------------------------------------------

@dataclass(frozen=True)
class GapParams:
    """``alpha = C(n,2) + 2 * f_log + 1`` for an approximation factor ``2**f_log``."""

    n: int
    f_log: int
    alpha: int
    k: int

    @property
    def yes_threshold(self) -> Dyadic:
        return pow2(self.k * self.alpha)

    @property
    def no_threshold(self) -> Dyadic:
        return pow2(num_pairs(self.n) + (self.k - 1) * self.alpha)


def gap_instance(g: Graph, k: int, f_log: int) -> tuple[ErgmModel, GapParams]:
    if f_log < 0:
        raise InvalidArgument("f_log must be >= 0")
    alpha = num_pairs(g.n) + 2 * f_log + 1
    m, p = build_trifree_ergm(g, alpha)
    m.metadata.update({"kind": "gap", "k": k, "f_log": f_log})
    return m, GapParams(g.n, f_log, alpha, k)


def gap_verdict(z: Dyadic, p: GapParams) -> tuple[bool, bool]:
    """``(z > yes_threshold, z < no_threshold)``."""
    return z > p.yes_threshold, z < p.no_threshold


def separation_identity_holds(p: GapParams) -> bool:
    """``f**2 * 2**(C(n,2) + (k-1)*alpha) == 2**(k*alpha - 1) < 2**(k*alpha)``."""
    lhs = pow2(2 * p.f_log) * pow2(num_pairs(p.n) + (p.k - 1) * p.alpha)
    rhs = pow2(p.k * p.alpha - 1)
    return lhs == rhs and rhs < p.yes_threshold


# -- snub gadget ----------------------------------------------------------------

VERTEX_TRIANGLE = "vertex-triangle"
CROSS = "cross"
CONNECTING = "connecting"


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class CrossInfo:
    """Gadget for source edge ``(i, j)``: cross edge ``u - w`` with ``u`` in
    ``t_i`` and ``w`` in ``t_j``, plus connecting edges ``u - next(w)`` and
    ``w - next(u)``."""

    source_edge: tuple[int, int]
    u: int
    w: int
    cross: tuple[int, int]
    connecting: tuple[tuple[int, int], tuple[int, int]]
    # vertex-triangle edges sharing a triangle with the cross edge
    u_side_edge: tuple[int, int]
    w_side_edge: tuple[int, int]


@dataclass(frozen=True)
class SnubGraph:
    graph: Graph
    source: Graph
    roles: Mapping[tuple[int, int], str]
    vertex_triangles: tuple[tuple[int, int, int], ...]
    successor: tuple[int, ...]
    gadgets: Mapping[tuple[int, int], CrossInfo] = field(default_factory=dict)

    def role_census(self) -> dict[str, int]:
        out = {VERTEX_TRIANGLE: 0, CROSS: 0, CONNECTING: 0}
        for r in self.roles.values():
            out[r] += 1
        return out

    def roles_json(self) -> dict:
        return {
            "edges": [[u, v, self.roles[(u, v)]] for u, v in sorted(self.roles)],
            "vertex_triangles": [list(t) for t in self.vertex_triangles],
            "pairing": [
                {"source_edge": list(ci.source_edge), "cross": list(ci.cross),
                 "connecting": [list(c) for c in ci.connecting],
                 "triangles": [list(self.vertex_triangles[ci.source_edge[0]]),
                               list(self.vertex_triangles[ci.source_edge[1]])]}
                for ci in (self.gadgets[e] for e in sorted(self.gadgets))
            ],
        }


def snub(g: Graph, rng: random.Random | None = None) -> SnubGraph:
    """Replace every vertex of a 3-regular bipartite graph by a triangle and
    every edge by a cross edge plus two connecting edges.

    Without ``rng`` the choices are deterministic: ``t_v`` is ``(3v, 3v+1,
    3v+2)`` in that cyclic order and each source edge, taken in canonical
    order, uses the lowest unpicked vertex of each end triangle. With ``rng``
    both the cyclic orders and the picks are randomized.
    """
    if not is_regular(g, 3):
        raise InvalidInput("snub needs a 3-regular graph")
    if not is_bipartite(g):
        raise InvalidInput("snub needs a bipartite graph")
    n = g.n
    tri_orders = []
    for v in range(n):
        order = [3 * v, 3 * v + 1, 3 * v + 2]
        if rng is not None:
            rng.shuffle(order)
        tri_orders.append(order)
    succ = [0] * (3 * n)
    for order in tri_orders:
        for a in range(3):
            succ[order[a]] = order[(a + 1) % 3]
    roles: dict[tuple[int, int], str] = {}
    for v in range(n):
        a, b, c = 3 * v, 3 * v + 1, 3 * v + 2
        for e in ((a, b), (a, c), (b, c)):
            roles[e] = VERTEX_TRIANGLE
    unpicked = [sorted(range(3 * v, 3 * v + 3)) for v in range(n)]
    gadgets = {}
    for i, j in g.edges():
        if rng is None:
            u = unpicked[i].pop(0)
            w = unpicked[j].pop(0)
        else:
            u = unpicked[i].pop(rng.randrange(len(unpicked[i])))
            w = unpicked[j].pop(rng.randrange(len(unpicked[j])))
        cross = _key(u, w)
        conn = (_key(u, succ[w]), _key(w, succ[u]))
        roles[cross] = CROSS
        for e in conn:
            roles[e] = CONNECTING
        gadgets[(i, j)] = CrossInfo((i, j), u, w, cross, conn, _key(u, succ[u]), _key(w, succ[w]))
    graph = Graph.from_edges(3 * n, roles.keys())
    triangles = tuple(tuple(sorted(range(3 * v, 3 * v + 3))) for v in range(n))
    return SnubGraph(graph, g, roles, triangles, tuple(succ), gadgets)


def matching_to_trifree_subgraph(sg: SnubGraph, matching: Sequence[Sequence[int]]) -> Graph:
    """Delete the cross edge of every unmatched source edge and, for every
    matched edge ``(i, j)``, the edge of ``t_i`` and of ``t_j`` that shares a
    triangle with the ``(i, j)`` cross edge."""
    src = sg.source
    matched = {_key(int(a), int(b)) for a, b in matching}
    covered = 0
    for u, v in matched:
        if not src.has_edge(u, v):
            raise InvalidInput(f"({u}, {v}) is not an edge of the source graph")
        if covered >> u & 1 or covered >> v & 1:
            raise InvalidInput("matching edges share a vertex")
        covered |= (1 << u) | (1 << v)
    if covered != (1 << src.n) - 1 or len(matched) != len(list(matching)):
        raise InvalidInput("not a perfect matching of the source graph")
    removed = []
    for e, gad in sg.gadgets.items():
        if e in matched:
            removed += [gad.u_side_edge, gad.w_side_edge]
        else:
            removed.append(gad.cross)
    return sg.graph.with_edges_removed(removed)


# -- matching model -----------------------------------------------------------

def matching_beta(n: int) -> int:
    c = num_pairs(n)
    return -c * c - c - 1


def build_matching_ergm(g: Graph, homogeneous_paths: bool = False) -> ErgmModel:
    """K2 indicators (weight ``C(n,2)`` on edges of ``g``, ``beta`` on
    non-edges) plus a ``beta`` indicator for every P2 of ``g``.

    Each P2 ``a - c - b`` of ``g`` becomes one indicator on ``(a, c, b)`` with
    ``a < b``. ``homogeneous_paths=True`` uses a single P2 count instead.
    """
    if not is_bipartite(g):
        raise InvalidInput("matching model needs a bipartite graph")
    n = g.n
    c = num_pairs(n)
    beta = matching_beta(n)
    feats = [indicator(K2, (u, v), c if g.has_edge(u, v) else beta) for u, v in pairs(n)]
    if homogeneous_paths:
        feats.append(iso_count(P2, beta))
    else:
        for center in range(n):
            nbrs = [v for v in range(n) if g.has_edge(center, v)]
            for a, b in combinations(nbrs, 2):
                feats.append(indicator(P2, (a, center, b), beta))
    meta = {"kind": "matching", "base_exponent": c, "beta": beta, "source": format_graph_text(g)}
    return ErgmModel(n, tuple(feats), meta)


def decode_matching_digits(z: Dyadic, n: int) -> DigitVector:
    """Digits ``d_0 .. d_C(n,2)`` of ``floor(z)`` in base ``2**C(n,2)``."""
    c = num_pairs(n)
    return integer_part_digits(z, c, c)


# -- feature replacement --------------------------------------------------------

MAX_EXPANDED_INDICATORS = 100_000


def expand_count_feature(m: ErgmModel, idx: int) -> ErgmModel:
    """Replace count feature ``idx`` by labeled indicators with the same weight.

    For each vertex subset (lexicographic) one indicator is added per distinct
    labeled copy of the pattern on that subset, using the lexicographically
    first vertex ordering that realizes it. At most one of them fires per
    subset, so every graph keeps its density exponent.
    """
    f = m.features[idx]
    if f.kind != COUNT:
        raise InvalidArgument(f"feature {idx} is not a count feature")
    p = f.pattern.n
    budget = comb(m.n, p) * max(1, len(list(permutations(range(p)))))
    if budget > MAX_EXPANDED_INDICATORS:
        raise TooLarge(f"expansion would create up to {budget} indicators")
    new = []
    for subset in combinations(range(m.n), p):
        seen = set()
        for order in permutations(subset):
            key = frozenset(_key(order[a], order[b]) for a, b in f.pattern.edges())
            if key not in seen:
                seen.add(key)
                new.append(indicator(f.pattern, order, f.weight))
    feats = list(m.features[:idx]) + new + list(m.features[idx + 1:])
    return ErgmModel(m.n, tuple(feats), dict(m.metadata))


@dataclass(frozen=True)
class ReplacementParams:
    """Bookkeeping for reading the old partition function out of the new one.

    ``s`` enforcement indicators of weight ``2*gamma`` were added. In every
    state where all of them fire, the new vertices are pinned except for
    ``free_pairs`` vertex pairs that no feature inspects.
    """

    gamma: int
    s: int
    w_plus: int
    w_minus: int
    free_pairs: int
    old_n: int
    new_n: int

    @property
    def window_bit(self) -> int:
        return 2 * self.s * self.gamma

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("gamma", "s", "w_plus", "w_minus", "free_pairs", "old_n", "new_n")}

    @classmethod
    def from_dict(cls, d: Mapping) -> ReplacementParams:
        return cls(**{k: int(d[k]) for k in ("gamma", "s", "w_plus", "w_minus", "free_pairs", "old_n", "new_n")})


def safe_gamma(w_plus: int, w_minus: int, new_n: int) -> int:
    """Smallest gamma >= w_plus + w_minus with ``2*gamma >= C(new_n,2) + w_plus + w_minus``.

    States missing an enforcement feature number fewer than ``2**C(new_n,2)``
    and each weighs at most ``2**(2*(s-1)*gamma + w_plus)``; the bound keeps
    their total below the lowest bit of the recovered window.
    """
    need = num_pairs(new_n) + w_plus + w_minus
    return max(w_plus + w_minus, -(-need // 2))


def _parse_embedding(embedding, k_prime: int, h: Graph) -> list[int]:
    if isinstance(embedding, str):
        try:
            embedding = dict(tuple(int(x) for x in item.split(":")) for item in embedding.split(",") if item.strip())
        except ValueError:
            raise InvalidEmbedding(f"cannot parse embedding {embedding!r}") from None
    if isinstance(embedding, Mapping):
        if set(embedding) != set(range(k_prime)):
            raise InvalidEmbedding(f"embedding must map every vertex 0..{k_prime - 1}")
        emb = [int(embedding[i]) for i in range(k_prime)]
    else:
        emb = [int(x) for x in embedding]
    if len(emb) != k_prime or len(set(emb)) != k_prime or any(not 0 <= x < h.n for x in emb):
        raise InvalidEmbedding(f"embedding {emb} is not an injective map into {h.n} vertices")
    return emb


def feature_replace(m: ErgmModel, feature_idx: int, pattern_h: Graph, embedding,
                    gamma: int | None = None) -> tuple[ErgmModel, ReplacementParams]:
    """Replace labeled indicator ``feature_idx`` (pattern H') by indicators on H.

    ``embedding`` maps vertex ``i`` of H' to vertex ``embedding[i]`` of H (a
    dict, a sequence, or text ``"0:0,1:2"``) and must be an induced copy.
    ``k = H.n`` fresh vertices are appended; fresh vertex ``n + h`` plays H's
    vertex ``h``. Added features:

    1. H on the fresh tuple, weight ``2*gamma``;
    2. for each i < k', the same tuple with H'-vertex ``i``'s slot swapped to
       the original vertex it pairs with, weight ``2*gamma``;
    3. the tuple with all k' slots swapped, carrying the replaced weight.

    Other count features are expanded into indicators on the original
    vertices first. ``gamma`` defaults to :func:`safe_gamma`; values below
    ``w_plus + w_minus`` are rejected.
    """
    f = m.features[feature_idx]
    if f.kind != INDICATOR:
        raise UnsupportedFeature("count features must be expanded with expand_count_feature first")
    h_prime = f.pattern
    k_prime, k = h_prime.n, pattern_h.n
    emb = _parse_embedding(embedding, k_prime, pattern_h)
    if induced(pattern_h, emb) != h_prime:
        raise InvalidEmbedding(f"embedding {emb} does not induce the replaced pattern inside H")
    w_plus, w_minus = weight_range(m)
    if w_plus + w_minus == 0:
        raise InvalidArgument("all weights are zero; gamma would be 0")
    n = m.n
    new_n = n + k
    if gamma is None:
        gamma = safe_gamma(w_plus, w_minus, new_n)
    elif gamma < w_plus + w_minus:
        raise InvalidArgument(f"gamma={gamma} below w_plus + w_minus = {w_plus + w_minus}")

    fresh = [n + h for h in range(k)]
    added = [indicator(pattern_h, fresh, 2 * gamma)]
    for i in range(k_prime):
        t = list(fresh)
        t[emb[i]] = f.vertices[i]
        added.append(indicator(pattern_h, t, 2 * gamma))
    t = list(fresh)
    for i in range(k_prime):
        t[emb[i]] = f.vertices[i]
    added.append(indicator(pattern_h, t, f.weight))
    s = k_prime + 1

    pinned = set()
    for feat in added[:s]:
        pinned.update(_key(a, b) for a, b in combinations(feat.vertices, 2))
    free = sum(1 for a, b in pairs(new_n) if b >= n and (a, b) not in pinned)

    # a count feature left as is would also count copies touching fresh vertices
    kept = []
    for j, g in enumerate(m.features):
        if j == feature_idx:
            continue
        if g.kind == COUNT:
            kept.extend(expand_count_feature(ErgmModel(n, (g,)), 0).features)
        else:
            kept.append(g)
    feats = kept + added
    params = ReplacementParams(gamma, s, w_plus, w_minus, free, n, new_n)
    meta = {"kind": "replaced", "replacement": params.to_dict()}
    return ErgmModel(new_n, tuple(feats), meta), params


def recover_old_partition(z_new: Dyadic, p: ReplacementParams) -> int:
    """Bits of ``z_new`` from ``2**(2*s*gamma)`` upward."""
    return shift_window(z_new, p.window_bit)


def old_window(z_old: Dyadic, p: ReplacementParams) -> int:
    """The natural that :func:`recover_old_partition` should return for ``z_old``:
    ``floor(z_old * 2**free_pairs)``."""
    return (z_old * pow2(p.free_pairs)).floor()


def recover_old_exact(z_new: Dyadic, p: ReplacementParams) -> Dyadic:
    """Exact ``Z_old``: read from bit ``2*s*gamma - w_minus`` and undo the
    free-pair multiplicity. Valid when gamma is at least :func:`safe_gamma`."""
    window = shift_window(z_new, p.window_bit - p.w_minus)
    return Dyadic(window, p.w_minus + p.free_pairs)


# -- dichotomy ------------------------------------------------------------------

THREE_VERTEX_CASES = ("K3", "P2", "P2-complement", "K3-complement")
_CASE_BY_EDGES = {3: "K3", 2: "P2", 1: "P2-complement", 0: "K3-complement"}
CASE_GRAPHS = {"K3": K3, "P2": P2, "P2-complement": complement(P2), "K3-complement": Graph.empty(3)}


@dataclass(frozen=True)
class Classification:
    verdict: str
    case: str | None = None
    pattern_index: int | None = None
    witness: tuple[int, int, int] | None = None


def induced_case(h: Graph) -> tuple[str, tuple[int, int, int]] | None:
    """The first of K3, P2, P2-complement, K3-complement that ``h`` contains as
    an induced subgraph, with a witnessing vertex triple."""
    found: dict[str, tuple[int, int, int]] = {}
    for tri in combinations(range(h.n), 3):
        edges = sum(h.has_edge(a, b) for a, b in combinations(tri, 2))
        found.setdefault(_CASE_BY_EDGES[edges], tri)
    for case in THREE_VERTEX_CASES:
        if case in found:
            return case, found[case]
    return None


def dichotomy_classify(patterns: Sequence[Graph]) -> Classification:
    """``polynomial`` if every pattern has at most two vertices, else
    ``sharp-p-hard`` with the induced three-vertex case of the first large pattern."""
    for i, h in enumerate(patterns):
        if h.n >= 3:
            case, tri = induced_case(h)
            return Classification("sharp-p-hard", case, i, tri)
    return Classification("polynomial")

