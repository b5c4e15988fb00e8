"""Compiled kernels vs the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat R]

Each kernel runs on the same input under both backends; outputs are compared
before timings are reported.
"""

import argparse
import random
import time

from ergmlab import _pykernels, kernels
from ergmlab.graph import Graph, complete_bipartite, cube, num_pairs
from ergmlab.model import ErgmModel, compile_terms, iso_count
from ergmlab.oracles import max_trifree_count
from ergmlab.reductions import build_trifree_ergm, snub
from ergmlab.verify import random_graph


def histogram_case(m: ErgmModel):
    terms = compile_terms(m)
    nbits = num_pairs(m.n)
    args = ([t[0] for t in terms], [t[1] for t in terms], [t[2] for t in terms], nbits, nbits, 0)
    return lambda impl: impl.exponent_histogram(*args)


def census_case(g: Graph):
    edges = list(g.edges())
    return lambda impl: impl.trifree_census(g.n, edges)


def hitting_case(g: Graph):
    return lambda impl: tuple(max_trifree_count(g, impl=impl))


def cases():
    rng = random.Random(0)
    g7 = random_graph(7, rng, p=0.6)
    yield "histogram trifree n=6", histogram_case(build_trifree_ergm(random_graph(6, rng), 16)[0])
    yield "histogram trifree n=7", histogram_case(build_trifree_ergm(g7, 22)[0])
    yield "histogram K3+P2 counts n=7", histogram_case(
        ErgmModel(7, (iso_count(Graph.complete(3), -2), iso_count(Graph.from_edges(3, [(0, 1), (1, 2)]), 1))))
    g9 = random_graph(9, rng, p=0.55)
    yield f"census {g9.num_edges()} edges", census_case(g9)
    yield "hitting sets snub(K3,3)", hitting_case(snub(complete_bipartite(3, 3)).graph)
    yield "hitting sets snub(Q3)", hitting_case(snub(cube()).graph)


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    compiled = kernels.compiled_backend
    if compiled is None:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'kernel':32s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, run in cases():
        t_py, out_py = best_of(lambda: run(_pykernels), args.repeat)
        if compiled is None:
            print(f"{name:32s} {t_py:10.4f} {'-':>10s} {'-':>8s}")
            continue
        t_c, out_c = best_of(lambda: run(compiled), args.repeat)
        if out_c != out_py:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:32s} {t_py:10.4f} {t_c:10.4f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
