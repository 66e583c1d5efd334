#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Run from the repository root:

    python benchmarks/compare_backends.py [--n 1000] [--k 20]

Both backends are imported directly, so this works regardless of which one
the package selected at import time.
"""

import argparse
import time

import numpy as np

import netgaps as ng
from netgaps import generators as gen
from netgaps import linkpred as lp
from netgaps.kernels import _core_py as pyk

try:
    from netgaps.kernels import _core_cy as cyk
except ImportError:
    cyk = None


def bench(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--k", type=float, default=20.0)
    ap.add_argument("--pairs", type=int, default=100_000)
    args = ap.parse_args()

    g = gen.generate_er(gen.ErParams(args.n, args.k, seed=0))
    indptr, indices = g.csr()
    us = np.ascontiguousarray(g.edge_array[:, 0])
    vs = np.ascontiguousarray(g.edge_array[:, 1])
    rng = np.random.default_rng(0)
    cand = lp.candidate_pairs(g)
    rows = rng.choice(cand.shape[0], size=min(args.pairs, cand.shape[0]),
                      replace=False)
    pu = np.ascontiguousarray(cand[rows, 0])
    pv = np.ascontiguousarray(cand[rows, 1])
    order = rng.permutation(g.n).astype(np.int32)
    tie = rng.integers(0, 2**64, size=g.n, dtype=np.uint64)
    weights = np.ones(indices.shape[0], dtype=np.float64)
    strength = g.degrees.astype(np.float64)

    cases = [
        ("bfs_distances", lambda k: k.bfs_distances(indptr, indices, 0)),
        ("all_eccentricities", lambda k: k.all_eccentricities(indptr, indices)),
        ("connected_components", lambda k: k.connected_components(indptr, indices)),
        ("bridges", lambda k: k.bridges(us, vs, g.n)),
        ("triangle_census", lambda k: k.triangle_census(indptr, indices)),
        ("score_pairs[aa]", lambda k: k.score_pairs(indptr, indices, pu, pv, 4)),
        ("louvain_sweep", lambda k: k.louvain_sweep(
            indptr, indices, weights, strength,
            np.arange(g.n, dtype=np.int32), strength.copy(), order,
            float(strength.sum()))),
        ("labelprop_sweep", lambda k: k.labelprop_sweep(
            indptr, indices, np.arange(g.n, dtype=np.int32), order, tie)),
    ]

    print(f"graph: n={g.n} m={g.num_edges}; scored pairs: {pu.shape[0]}")
    print(f"{'kernel':<22}{'python':>12}{'cython':>12}{'speedup':>10}")
    for name, call in cases:
        t_py, _ = bench(call, pyk)
        if cyk is None:
            print(f"{name:<22}{t_py * 1e3:>10.1f}ms{'-':>12}{'-':>10}")
            continue
        t_cy, _ = bench(call, cyk)
        print(f"{name:<22}{t_py * 1e3:>10.1f}ms{t_cy * 1e3:>10.2f}ms"
              f"{t_py / t_cy:>9.0f}x")
    if cyk is None:
        print("compiled backend not built; install the package to compare")


if __name__ == "__main__":
    main()
