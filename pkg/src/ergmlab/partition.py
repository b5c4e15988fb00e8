"""Partition-function engines.

``partition_exhaustive`` sums the density of every graph on the model's vertex
set; ``partition_two_vertex`` is the closed form for models whose features
touch at most two vertices; ``decode_trifree_digits`` reads triangle-free
subgraph counts off the integer part of a trifree model's partition function.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

from . import kernels
from .dyadic import DigitVector, Dyadic, dyadic_sum, from_exponent_histogram, integer_part_digits, pow2
from .errors import PreconditionViolated, TooLarge, UnsupportedFeature
from .graph import from_code, num_pairs, pairs
from .model import COUNT, INDICATOR, ErgmModel, compile_terms, density_exponent

MAX_EXHAUSTIVE_N = 8


@dataclass(frozen=True)
class PartitionResult:
    z: Dyadic
    states_enumerated: int


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get("ERGMLAB_THREADS", "1") or 1)
    return max(1, threads)


def exponent_histogram(m: ErgmModel, threads: int | None = None, impl=None) -> dict[int, int]:
    """``{e: number of graphs with density 2**e}`` over all graphs on ``m.n`` vertices."""
    terms = compile_terms(m)
    masks = [t[0] for t in terms]
    wants = [t[1] for t in terms]
    weights = [t[2] for t in terms]
    nbits = num_pairs(m.n)
    workers = resolve_threads(threads)
    split = 0
    if workers > 1:
        split = min(nbits, (workers - 1).bit_length() + 2)
    low = nbits - split
    prefixes = [j << low for j in range(1 << split)]

    def block(prefix):
        return kernels.exponent_histogram(masks, wants, weights, nbits, low, prefix, impl=impl)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(block, prefixes))
    else:
        parts = [block(p) for p in prefixes]
    hist: dict[int, int] = {}
    for part in parts:
        for e, c in part.items():
            hist[e] = hist.get(e, 0) + c
    return hist


def partition_exhaustive(m: ErgmModel, max_n: int = MAX_EXHAUSTIVE_N, threads: int | None = None,
                         impl=None) -> PartitionResult:
    """Exact ``Z`` by enumerating all ``2**C(n,2)`` graphs.

    The GraphCode range may be split across ``threads`` workers; per-worker
    exponent histograms are merged by integer addition, so the result does not
    depend on the worker count.
    """
    if m.n > max_n:
        raise TooLarge(f"exhaustive enumeration capped at n <= {max_n}, got n={m.n}")
    hist = exponent_histogram(m, threads=threads, impl=impl)
    return PartitionResult(from_exponent_histogram(hist), 1 << num_pairs(m.n))


def partition_reference(m: ErgmModel, max_n: int = 5) -> PartitionResult:
    """Slow path: recompute ``density_exponent`` from the graph for every state."""
    if m.n > max_n:
        raise TooLarge(f"reference enumeration capped at n <= {max_n}")
    states = 1 << num_pairs(m.n)
    z = dyadic_sum(pow2(density_exponent(m, from_code(c, m.n))) for c in range(states))
    return PartitionResult(z, states)


@dataclass(frozen=True)
class TwoVertexTerms:
    """Per-pair edge weight ``x``, non-edge weight ``x_bar`` and ``x_prime = x - x_bar``,
    plus ``Y = prod 2**x_bar`` and the exponent of features that fire on every graph."""

    x: dict[tuple[int, int], int]
    x_bar: dict[tuple[int, int], int]
    x_prime: dict[tuple[int, int], int]
    y: Dyadic
    constant: int


def two_vertex_terms(m: ErgmModel) -> TwoVertexTerms:
    x = {e: 0 for e in pairs(m.n)}
    x_bar = dict(x)
    constant = 0
    for f in m.features:
        p = f.pattern.n
        if p > 2:
            raise UnsupportedFeature(f"pattern on {p} vertices; the closed form needs <= 2")
        if p < 2:
            constant += f.weight * (1 if f.kind == INDICATOR else comb(m.n, p))
            continue
        target = x if f.pattern.has_edge(0, 1) else x_bar
        if f.kind == COUNT:
            for e in target:
                target[e] += f.weight
        else:
            u, v = f.vertices
            target[(min(u, v), max(u, v))] += f.weight
    x_prime = {e: x[e] - x_bar[e] for e in x}
    return TwoVertexTerms(x, x_bar, x_prime, pow2(sum(x_bar.values())), constant)


def partition_two_vertex(m: ErgmModel) -> PartitionResult:
    """``Z = 2**constant * Y * prod_e (1 + 2**x_prime[e])``."""
    t = two_vertex_terms(m)
    z = t.y * pow2(t.constant)
    one = Dyadic(1)
    for e in t.x_prime:
        z = z * (one + pow2(t.x_prime[e]))
    return PartitionResult(z, len(t.x_prime))


def decode_trifree_digits(z: Dyadic, n: int, alpha: int) -> DigitVector:
    """Digits ``d_0 .. d_C(n,2)`` of ``floor(z)`` in base ``2**alpha``; for a
    trifree model ``d_i`` counts the ``i``-edge triangle-free subgraphs."""
    if alpha <= num_pairs(n):
        raise PreconditionViolated(f"alpha={alpha} must exceed C({n},2)={num_pairs(n)}")
    return integer_part_digits(z, alpha, num_pairs(n))


def count_at_least_k(d: DigitVector, k: int) -> int:
    return sum(d.digits[k:])
