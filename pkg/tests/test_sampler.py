import random
from fractions import Fraction

import pytest

from ergmlab.dyadic import Dyadic, pow2
from ergmlab.errors import TooLarge
from ergmlab.graph import Graph, from_code, path
from ergmlab.model import ErgmModel, density_exponent, indicator, iso_count
from ergmlab.reductions import build_trifree_ergm
from ergmlab.sampler import (
    acceptance_probability,
    accepts,
    exact_distribution,
    initial_state,
    mh_step,
    run_chain,
    tv_distance,
    witness_bit,
)
from ergmlab.verify import detailed_balance_holds, random_small_model

K3 = Graph.complete(3)


class CountingRandom(random.Random):
    calls = 0

    def getrandbits(self, k):
        self.calls += 1
        return super().getrandbits(k)


def test_acceptance_probability():
    assert acceptance_probability(3) == Dyadic(1)
    assert acceptance_probability(0) == Dyadic(1)
    assert acceptance_probability(-5) == pow2(-5)
    assert acceptance_probability(-64) == pow2(-64)
    assert acceptance_probability(-65) == Dyadic(0)


def test_accepts_only_draws_when_needed():
    rng = CountingRandom(1)
    assert accepts(0, rng) and accepts(7, rng)
    assert not accepts(-65, rng)
    assert rng.calls == 0
    accepts(-1, rng)
    assert rng.calls == 1


def test_accept_rate_for_delta_minus_two():
    rng = random.Random(5)
    hits = sum(accepts(-2, rng) for _ in range(40000))
    assert abs(hits / 40000 - 0.25) < 0.01


@pytest.mark.parametrize("seed", range(6))
def test_detailed_balance_random_models(seed):
    rng = random.Random(seed)
    ok, why = detailed_balance_holds(random_small_model(rng.randint(2, 4), rng))
    assert ok, why


def test_detailed_balance_with_clamped_moves():
    m = ErgmModel(3, (iso_count(K3, -200), iso_count(Graph.complete(2), 1)))
    ok, why = detailed_balance_holds(m)
    assert not ok and "codes" in why    # moves into K3 are rejected outright, so exact balance fails there


def test_step_function_matches_fast_loop():
    m = random_small_model(4, random.Random(2))
    samples, _ = run_chain(m, 2000, seed=9, tv=False)
    state = initial_state(m, seed=9)
    for want in samples:
        state = mh_step(state, m)
        assert state.code == want
        assert state.current_exponent == density_exponent(m, state.current)
    assert state.step_count == 2000


def test_chains_are_reproducible():
    m = random_small_model(4, random.Random(3))
    a, ra = run_chain(m, 5000, seed=1)
    b, rb = run_chain(m, 5000, seed=1)
    c, _ = run_chain(m, 5000, seed=2)
    assert a == b and ra == rb and a != c


def test_exact_distribution():
    m, _ = build_trifree_ergm(K3, 4)
    dist = exact_distribution(m)
    assert sum(dist) == 1
    assert dist[0b011] == Fraction(256 * 16, 13073)
    with pytest.raises(TooLarge):
        exact_distribution(ErgmModel(6, ()))


def test_tv_distance():
    m = ErgmModel(2, ())
    assert tv_distance([0, 1], m) == 0.0
    assert tv_distance([0, 0], m) == 0.5


def test_trifree_chain_frequencies():
    m, _ = build_trifree_ergm(K3, 4)
    samples, report = run_chain(m, 200_000, seed=4)
    p = float(Fraction(256 * 16, 13073))
    for code in (0b011, 0b101, 0b110):
        assert abs(samples.count(code) / len(samples) - p) < 0.02
    assert report.tv_distance < 0.05


def test_empty_vertex_set_chain():
    samples, report = run_chain(ErgmModel(1, ()), 10, seed=0)
    assert samples == [0] * 10 and report.acceptance_rate == 0
    state = mh_step(initial_state(ErgmModel(1, ())), ErgmModel(1, ()))
    assert state.step_count == 1


def test_witness_bit():
    g = path(4)
    _, params = build_trifree_ergm(g, 7)
    assert witness_bit(params, g, 3) == 1
    assert witness_bit(params, g, 4) == 0
    assert witness_bit(params, Graph.from_edges(4, [(0, 2)]), 1) == 0   # not a subgraph of g
    _, tri = build_trifree_ergm(K3, 4)
    assert witness_bit(tri, K3, 2) == 0
    assert witness_bit(tri, from_code(0b011, 3), 2) == 1


def test_run_chain_rejects_no_steps():
    with pytest.raises(ValueError):
        run_chain(ErgmModel(2, ()), 0)


def test_weighted_edge_chain():
    m = ErgmModel(2, (indicator(Graph.complete(2), (0, 1), -1),))
    samples, _ = run_chain(m, 60000, seed=8)
    assert abs(sum(samples) / len(samples) - 1 / 3) < 0.02
