"""Integer-weight ERGMs built from labeled indicators and isomorphism counts.

A graph's density is ``2**density_exponent(model, g)``. Two evaluation routes
exist: :func:`density_exponent` works on :class:`Graph` objects through
induced subgraphs and isomorphism tests, while :func:`compile_terms` lowers a
model to bitmask terms over graph codes for the enumeration kernels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import Any, Sequence

from .errors import InvalidArgument, UnsupportedSize
from .graph import (
    MAX_ISO_VERTICES,
    Graph,
    complement,
    format_graph_text,
    induced,
    is_isomorphic_small,
    pair_index,
    parse_graph_text,
)

INDICATOR = "indicator"
COUNT = "count"


@dataclass(frozen=True)
class Feature:
    """A weighted feature.

    ``kind == "indicator"``: 1 iff the subgraph induced by ``vertices`` equals
    ``pattern`` under the given numbering. ``kind == "count"``: number of vertex
    subsets inducing a copy of ``pattern``.
    """

    kind: str
    pattern: Graph
    weight: int
    vertices: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind == INDICATOR:
            if self.vertices is None or len(self.vertices) != self.pattern.n:
                raise InvalidArgument("indicator needs one vertex per pattern vertex")
            if len(set(self.vertices)) != len(self.vertices):
                raise InvalidArgument(f"indicator vertices not distinct: {self.vertices}")
            object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        elif self.kind == COUNT:
            if self.vertices is not None:
                raise InvalidArgument("count features take no vertices")
            if self.pattern.n > MAX_ISO_VERTICES:
                raise UnsupportedSize(f"count pattern limited to {MAX_ISO_VERTICES} vertices")
        else:
            raise InvalidArgument(f"unknown feature kind {self.kind!r}")
        if not isinstance(self.weight, int) or isinstance(self.weight, bool):
            raise InvalidArgument(f"weights must be integers, got {self.weight!r}")


def indicator(pattern: Graph, vertices: Sequence[int], weight: int) -> Feature:
    return Feature(INDICATOR, pattern, weight, tuple(vertices))


def iso_count(pattern: Graph, weight: int) -> Feature:
    return Feature(COUNT, pattern, weight)


@dataclass(frozen=True)
class ErgmModel:
    n: int
    features: tuple[Feature, ...]
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        for f in self.features:
            if f.kind == INDICATOR and any(not 0 <= v < self.n for v in f.vertices):
                raise InvalidArgument(f"feature vertices {f.vertices} out of range for n={self.n}")

    def weights(self) -> list[int]:
        return [f.weight for f in self.features]


def _check_size(m: ErgmModel, g: Graph) -> None:
    if g.n != m.n:
        raise InvalidArgument(f"graph has {g.n} vertices, model has {m.n}")


def eval_feature(m: ErgmModel, idx: int, g: Graph) -> int:
    _check_size(m, g)
    f = m.features[idx]
    if f.kind == INDICATOR:
        return int(induced(g, f.vertices) == f.pattern)
    return sum(
        1 for vs in combinations(range(g.n), f.pattern.n)
        if is_isomorphic_small(induced(g, vs), f.pattern)
    )


def density_exponent(m: ErgmModel, g: Graph) -> int:
    """``sum_f f(g) * w_f``; the density of ``g`` is two to this power."""
    _check_size(m, g)
    return sum(eval_feature(m, i, g) * f.weight for i, f in enumerate(m.features) if f.weight)


def max_feature_value(f: Feature, n: int) -> int:
    if f.kind == INDICATOR:
        return 1
    return comb(n, f.pattern.n)


def weight_range(m: ErgmModel) -> tuple[int, int]:
    """``(w_plus, w_minus)``: the largest and the most negative attainable
    exponent contributions, each as a non-negative number."""
    w_plus = w_minus = 0
    for f in m.features:
        top = f.weight * max_feature_value(f, m.n)
        if top > 0:
            w_plus += top
        else:
            w_minus -= top
    return w_plus, w_minus


def complement_model(m: ErgmModel) -> ErgmModel:
    return ErgmModel(
        m.n,
        tuple(Feature(f.kind, complement(f.pattern), f.weight, f.vertices) for f in m.features),
        dict(m.metadata),
    )


# -- bitmask lowering ---------------------------------------------------------

def _labeled_patterns(pattern: Graph) -> list[list[tuple[int, int]]]:
    """Distinct edge sets (over positions 0..p-1) of all relabelings of ``pattern``."""
    seen = set()
    out = []
    edges = list(pattern.edges())
    for perm in permutations(range(pattern.n)):
        key = frozenset(tuple(sorted((perm[a], perm[b]))) for a, b in edges)
        if key not in seen:
            seen.add(key)
            out.append(sorted(key))
    return out


def compile_terms(m: ErgmModel) -> list[tuple[int, int, int]]:
    """Lower ``m`` to terms ``(mask, want, weight)`` over graph codes.

    ``density_exponent(m, from_code(c, n)) == sum(w for mask, want, w in terms
    if c & mask == want)``. A count feature becomes one term per vertex subset
    and distinct labeled copy, so at most one term per subset can fire.
    """
    n = m.n
    terms = []
    for f in m.features:
        if f.weight == 0:
            continue
        p = f.pattern.n
        if f.kind == INDICATOR:
            vs = f.vertices
            mask = want = 0
            for a in range(p):
                for b in range(a + 1, p):
                    bit = 1 << pair_index(vs[a], vs[b], n)
                    mask |= bit
                    if f.pattern.has_edge(a, b):
                        want |= bit
            terms.append((mask, want, f.weight))
            continue
        copies = _labeled_patterns(f.pattern)
        for vs in combinations(range(n), p):
            mask = 0
            for a, b in combinations(range(p), 2):
                mask |= 1 << pair_index(vs[a], vs[b], n)
            for copy in copies:
                want = 0
                for a, b in copy:
                    want |= 1 << pair_index(vs[a], vs[b], n)
                terms.append((mask, want, f.weight))
    return terms


def terms_by_bit(terms: Sequence[tuple[int, int, int]], nbits: int) -> list[list[int]]:
    """For each code bit, the indices of the terms whose mask contains it."""
    out = [[] for _ in range(nbits)]
    for t, (mask, _, _) in enumerate(terms):
        b = 0
        r = mask
        while r:
            if r & 1:
                out[b].append(t)
            r >>= 1
            b += 1
    return out


def exponent_of_code(terms: Sequence[tuple[int, int, int]], code: int) -> int:
    return sum(w for mask, want, w in terms if code & mask == want)


def constant_exponent(terms: Sequence[tuple[int, int, int]]) -> int:
    """Total weight of mask-free terms (features that fire on every graph)."""
    return sum(w for mask, _, w in terms if mask == 0)


# -- JSON model files ---------------------------------------------------------

def model_to_dict(m: ErgmModel) -> dict[str, Any]:
    feats = []
    for f in m.features:
        d: dict[str, Any] = {"kind": f.kind, "pattern": format_graph_text(f.pattern), "weight": str(f.weight)}
        if f.vertices is not None:
            d["vertices"] = list(f.vertices)
        feats.append(d)
    out: dict[str, Any] = {"n": m.n, "features": feats}
    if m.metadata:
        out["metadata"] = m.metadata
    return out


def model_from_dict(obj: dict[str, Any]) -> ErgmModel:
    try:
        n = int(obj["n"])
        feats = []
        for d in obj["features"]:
            vs = d.get("vertices")
            feats.append(Feature(d["kind"], parse_graph_text(d["pattern"]), int(d["weight"]),
                                 None if vs is None else tuple(vs)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidArgument):
            raise
        raise InvalidArgument(f"malformed model: {exc}") from None
    return ErgmModel(n, tuple(feats), dict(obj.get("metadata", {})))


def dumps_model(m: ErgmModel) -> str:
    return json.dumps(model_to_dict(m), indent=2)


def loads_model(text: str) -> ErgmModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"model file is not JSON: {exc}") from None
    return model_from_dict(obj)
