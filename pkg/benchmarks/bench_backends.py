#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Usage:  python benchmarks/bench_backends.py [--q 3] [--e7-samples 500000]

Covers the three hot paths: the full q^12 type scan, the orbit closure from
both representatives, and the bulk ternary splitting-type classifier.  The
numba timings are reported after a warm-up call so JIT compilation is not
billed to the kernel.
"""

import argparse
import time

import numpy as np

from quatpairs._accel import get_backend
from quatpairs.census import (
    d5_generators,
    d5_pair_to_vec,
    d5_vec_to_pair,
    encode_vec,
    enumerate_census,
    first_irreducible_quadratic_constant,
    generator_matrices,
)
from quatpairs.exact_algebra import PrimeField
from quatpairs.quaternion import QuaternionAlgebra
from quatpairs.representatives import d5_w, d5_x_alpha


def timeit(fn, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--e7-samples", type=int, default=500000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    q = args.q
    field = PrimeField(q)
    alg = QuaternionAlgebra(field, 1, 1)
    gens = d5_generators(alg, field)
    gmats = generator_matrices(alg, field, gens, d5_pair_to_vec, d5_vec_to_pair, 12)
    c = first_irreducible_quadratic_constant(field)
    start_w = encode_vec(d5_pair_to_vec(d5_w(alg)), q)
    start_a = encode_vec(d5_pair_to_vec(d5_x_alpha(alg, 0, c)), q)
    rng = np.random.default_rng(0)
    e7_samples = rng.integers(0, q, size=(args.e7_samples, 30), dtype=np.int64)

    rows = []
    results = {}
    for name in ("numpy", "numba"):
        try:
            bk = get_backend(name)
        except Exception as exc:
            print(f"{name}: unavailable ({exc})")
            continue
        # warm-up (compile + caches)
        bk.e7_classify(e7_samples[:16], q)
        bk.bfs_orbit(q, gmats, start_w)
        t_scan, table = timeit(lambda: bk.d5_type_table(q), args.repeat)
        t_orbit, vis = timeit(
            lambda: (bk.bfs_orbit(q, gmats, start_w), bk.bfs_orbit(q, gmats, start_a)),
            args.repeat)
        t_e7, counts = timeit(lambda: bk.e7_classify(e7_samples, q), args.repeat)
        sizes = (int(np.count_nonzero(vis[0])), int(np.count_nonzero(vis[1])))
        results[name] = (np.array_equal(table, results.get("_table", table)),
                         sizes, tuple(int(x) for x in counts))
        results["_table"] = table
        rows.append((name, t_scan, t_orbit, t_e7))
        print(f"{name:>6}: type scan {t_scan:8.3f}s   orbits {t_orbit:8.3f}s   "
              f"e7 classify {t_e7:8.3f}s   (orbit sizes {sizes})")
    if len(rows) == 2:
        su = [rows[0][i] / rows[1][i] for i in (1, 2, 3)]
        print(f"speedup numba over numpy: scan x{su[0]:.1f}, orbits x{su[1]:.1f}, "
              f"e7 x{su[2]:.1f}")
        a, b = results["numpy"], results["numba"]
        assert a[1] == b[1] and a[2] == b[2], "backends disagree!"
        print("backend results identical: OK")

    t0 = time.perf_counter()
    enumerate_census(q)
    print(f"full census (q={q}) end to end: {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
