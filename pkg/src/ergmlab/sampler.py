"""Edge-toggle Metropolis-Hastings for integer-weight ERGMs.

A step proposes toggling a uniformly random vertex pair and accepts with
probability ``min(1, 2**delta)``. For ``-64 <= delta < 0`` the draw is exact:
64 random bits are accepted iff they encode a value below ``2**(64 + delta)``.
Moves with ``delta < -64`` are always rejected, an error below ``2**-64`` per
step.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .dyadic import Dyadic, pow2
from .errors import InvalidArgument, TooLarge
from .graph import Graph, from_code, num_pairs, to_code, triangle_count
from .model import ErgmModel, compile_terms, exponent_of_code, terms_by_bit
from .reductions import TrifreeParams

ACCEPT_BITS = 64
MAX_TV_N = 5


class _Compiled:
    """Per-model bitmask terms indexed by the code bit they touch."""

    def __init__(self, model: ErgmModel):
        self.n = model.n
        self.nbits = num_pairs(model.n)
        terms = compile_terms(model)
        self.terms = terms
        self.by_bit = [[terms[t] for t in ids] for ids in terms_by_bit(terms, self.nbits)]

    def delta(self, code: int, bit: int) -> int:
        flipped = code ^ (1 << bit)
        d = 0
        for mask, want, w in self.by_bit[bit]:
            d += w * ((flipped & mask == want) - (code & mask == want))
        return d


_cache: dict[int, tuple[ErgmModel, _Compiled]] = {}


def _compiled(model: ErgmModel) -> _Compiled:
    hit = _cache.get(id(model))
    if hit is None or hit[0] is not model:
        if len(_cache) > 256:
            _cache.clear()
        hit = (model, _Compiled(model))
        _cache[id(model)] = hit
    return hit[1]


@dataclass
class ChainState:
    """Current graph (as a graph code) with its cached density exponent.

    ``rng`` carries the generator stream; :func:`mh_step` advances it.
    """

    n: int
    code: int
    current_exponent: int
    step_count: int = 0
    rng_seed: int | None = None
    rng: random.Random = field(default_factory=random.Random, repr=False, compare=False)

    @property
    def current(self) -> Graph:
        return from_code(self.code, self.n)


def initial_state(model: ErgmModel, seed: int | None = None, start: Graph | None = None) -> ChainState:
    code = 0 if start is None else to_code(start)
    exponent = exponent_of_code(_compiled(model).terms, code)
    return ChainState(model.n, code, exponent, 0, seed, random.Random(seed))


def accepts(delta: int, rng: random.Random) -> bool:
    if delta >= 0:
        return True
    if delta < -ACCEPT_BITS:
        return False
    return rng.getrandbits(ACCEPT_BITS) < 1 << (ACCEPT_BITS + delta)


def acceptance_probability(delta: int) -> Dyadic:
    """Exact probability that :func:`accepts` returns True."""
    if delta >= 0:
        return Dyadic(1)
    if delta < -ACCEPT_BITS:
        return Dyadic(0)
    return pow2(delta)


def mh_step(state: ChainState, model: ErgmModel) -> ChainState:
    if state.n != model.n:
        raise InvalidArgument("state and model disagree on n")
    c = _compiled(model)
    if c.nbits == 0:
        return ChainState(state.n, state.code, state.current_exponent, state.step_count + 1,
                          state.rng_seed, state.rng)
    bit = state.rng.randrange(c.nbits)
    d = c.delta(state.code, bit)
    code, exponent = state.code, state.current_exponent
    if accepts(d, state.rng):
        code ^= 1 << bit
        exponent += d
    return ChainState(state.n, code, exponent, state.step_count + 1, state.rng_seed, state.rng)


@dataclass(frozen=True)
class SampleReport:
    steps: int
    acceptance_rate: float
    tv_distance: float | None = None


def exact_distribution(model: ErgmModel) -> list[Fraction]:
    """``Pr[code]`` for every graph code, exactly (small ``n`` only)."""
    if model.n > MAX_TV_N:
        raise TooLarge(f"exact distribution limited to n <= {MAX_TV_N}")
    terms = _compiled(model).terms
    weights = [pow2(exponent_of_code(terms, c)).to_fraction() for c in range(1 << num_pairs(model.n))]
    z = sum(weights)
    return [w / z for w in weights]


def tv_distance(samples, model: ErgmModel) -> float:
    """``1/2 * sum |empirical - exact|`` over all ``2**C(n,2)`` graphs."""
    exact = exact_distribution(model)
    hist = [0] * len(exact)
    for c in samples:
        hist[c] += 1
    total = len(samples)
    return float(sum(abs(Fraction(h, total) - p) for h, p in zip(hist, exact)) / 2)


def run_chain(model: ErgmModel, steps: int, seed: int | None = None,
              tv: bool | None = None) -> tuple[list[int], SampleReport]:
    """Run ``steps`` steps from the empty graph; returns the visited graph codes
    (one per step) and a report. TV distance is computed when ``model.n <= 5``
    unless ``tv`` says otherwise."""
    if steps < 1:
        raise InvalidArgument("steps must be >= 1")
    c = _compiled(model)
    rng = random.Random(seed)
    code = 0
    samples = [0] * steps
    accepted = 0
    nbits = c.nbits
    getbits = rng.getrandbits
    randrange = rng.randrange
    by_bit = c.by_bit
    for i in range(steps):
        if nbits:
            bit = randrange(nbits)
            flipped = code ^ (1 << bit)
            d = 0
            for mask, want, w in by_bit[bit]:
                d += w * ((flipped & mask == want) - (code & mask == want))
            if d >= 0 or (d >= -ACCEPT_BITS and getbits(ACCEPT_BITS) < 1 << (ACCEPT_BITS + d)):
                code = flipped
                accepted += 1
        samples[i] = code
    if tv is None:
        tv = model.n <= MAX_TV_N
    report = SampleReport(steps, accepted / steps, tv_distance(samples, model) if tv else None)
    return samples, report


def witness_bit(params: TrifreeParams, sample: Graph, k: int) -> int:
    """1 iff ``sample`` is a triangle-free subgraph of the source graph with at
    least ``k`` edges."""
    g = params.source
    if sample.n != g.n:
        return 0
    if any(not g.has_edge(u, v) for u, v in sample.edges()):
        return 0
    if triangle_count(sample):
        return 0
    return int(sample.num_edges() >= k)
