#!/usr/bin/env python3
"""Benchmark the numba lane of the hot kernels against the pure-numpy lane.

Runs Ward linkage, all-pairs BFS, and all-pairs Dijkstra on stochastic
block model graphs of a few sizes and prints per-call times plus speedups.
Usage: python benchmarks/bench_backends.py [--sizes 100 300]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from kernelbench import _accel
from kernelbench.generators import generate, uniform_spec
from kernelbench.graph import edge_cost_matrix


def best_of(fn, *args, repeat: int = 5) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[100, 300])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    have_numba = hasattr(_accel, "_ward_merges_numba")
    if not have_numba:
        print("numba not available; timing the numpy lane only")

    rows = []
    for n in args.sizes:
        g = generate(uniform_spec(n, 2, 0.3, 0.1, seed=7), 0)
        rng = np.random.default_rng(n)
        points = rng.normal(size=(n, 8))
        sqdist = ((points[:, None, :] - points[None, :, :]) ** 2).sum(-1)
        costs = edge_cost_matrix(g)
        indptr, indices = _accel._csr_structure(g.adjacency)
        finite = np.isfinite(costs)
        drows, dcols = np.nonzero(finite)
        dptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(drows, minlength=n), out=dptr[1:])
        dcosts = costs[drows, dcols]

        cases = [
            ("ward", lambda: _accel._ward_merges_numpy(sqdist.copy()),
             (lambda: _accel._ward_merges_numba(sqdist.copy())) if have_numba else None),
            ("bfs", lambda: _accel._bfs_hops_numpy(g.adjacency),
             (lambda: _accel._bfs_hops_numba(indptr, indices, n)) if have_numba else None),
            ("dijkstra", lambda: _accel._dijkstra_numpy(costs),
             (lambda: _accel._dijkstra_numba(dptr, dcols.astype(np.int64), dcosts, n))
             if have_numba else None),
        ]
        for name, numpy_fn, numba_fn in cases:
            if numba_fn is not None:
                numba_fn()  # compile before timing
            t_np = best_of(numpy_fn, repeat=args.repeat)
            t_nb = best_of(numba_fn, repeat=args.repeat) if numba_fn else float("nan")
            rows.append((name, n, t_np, t_nb))

    print(f"{'kernel':10s} {'n':>5s} {'numpy':>12s} {'numba':>12s} {'speedup':>9s}")
    for name, n, t_np, t_nb in rows:
        speed = t_np / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
        print(f"{name:10s} {n:5d} {t_np * 1e3:10.2f}ms {t_nb * 1e3:10.2f}ms {speed:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
