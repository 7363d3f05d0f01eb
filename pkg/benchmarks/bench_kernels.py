#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Covers the three hot paths: batched map steps (transitivity and coverage
iteration), batched determinants (critical-set scans and sweeps), and
the all-pairs reachability diameter.  Run:

    python benchmarks/bench_kernels.py [--points 200000] [--steps 40] [--grid 48]
"""

import argparse
import time

import numpy as np
from scipy.sparse import csr_matrix

from rtmap.config import RunConfig, build_maps
from rtmap.kernels import get_backend
from rtmap.perturb import PerturbationSpec, PerturbedMap, make_perturbation
from rtmap.verify import box_transitivity


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--steps", type=int, default=40)
    ap.add_argument("--grid", type=int, default=48)
    args = ap.parse_args()

    maps = build_maps(RunConfig())
    field = make_perturbation(PerturbationSpec(seed=1, eta=0.01))
    kp = PerturbedMap(maps.singular, field)._kparams()

    rng = np.random.default_rng(0)
    pts = np.ascontiguousarray(rng.random((args.points, 2)))

    backends = {}
    for name in ("numpy", "numba"):
        try:
            backends[name] = get_backend(name)
        except ImportError:
            print(f"{name}: unavailable, skipped")
    if "numba" in backends:
        backends["numba"].step_batch(pts[:16], *kp)  # trigger JIT before timing
        backends["numba"].det_batch(pts[:16], *kp)

    print(f"\nmap step batch: {args.points} points x {args.steps} steps "
          f"(perturbed singular map)")
    results = {}
    for name, impl in backends.items():
        def run(impl=impl):
            cur = pts
            for _ in range(args.steps):
                cur = impl.step_batch(cur, *kp)
        results[name] = _time(run)
        evals = args.points * args.steps
        print(f"  {name:6s} {results[name]:8.3f} s   "
              f"({evals / results[name] / 1e6:7.1f} M evals/s)")
    if len(results) == 2:
        print(f"  speedup numba vs numpy: {results['numpy'] / results['numba']:.2f}x")

    print(f"\ndeterminant batch: {args.points} points")
    results = {}
    for name, impl in backends.items():
        results[name] = _time(lambda impl=impl: impl.det_batch(pts, *kp))
        print(f"  {name:6s} {results[name]:8.3f} s")
    if len(results) == 2:
        print(f"  speedup numba vs numpy: {results['numpy'] / results['numba']:.2f}x")

    print(f"\nreachability diameter: {args.grid}x{args.grid} grid digraph")
    rep = box_transitivity(maps.singular, grid_k=args.grid, horizon=20,
                           samples_per_cell=16, seed=0, compute_diameter=False)
    cells = args.grid * args.grid
    A = csr_matrix(
        (np.ones(rep.n_edges, dtype=np.int8), (rep.edge_src, rep.edge_dst)),
        shape=(cells, cells),
    )
    indptr = A.indptr.astype(np.int64)
    indices = A.indices.astype(np.int64)
    if "numba" in backends:
        backends["numba"].graph_diameter(*_tiny_graph())  # JIT
    results = {}
    for name, impl in backends.items():
        results[name] = _time(lambda impl=impl: impl.graph_diameter(indptr, indices, cells), repeats=1)
        print(f"  {name:6s} {results[name]:8.3f} s "
              f"(diameter {impl.graph_diameter(indptr, indices, cells)})")
    if len(results) == 2:
        print(f"  speedup numba vs numpy: {results['numpy'] / results['numba']:.2f}x")


def _tiny_graph():
    A = csr_matrix(np.ones((4, 4), dtype=np.int8))
    return A.indptr.astype(np.int64), A.indices.astype(np.int64), 4


if __name__ == "__main__":
    main()
