#!/usr/bin/env python3
"""Benchmark: compiled search kernels vs the pure-Python fallback.

Times the two hot paths (the brute-force branch and bound and the
vertex-cover guess scan) on identical corpora under both backends and prints
a speedup table.  Results are asserted equal along the way, so this doubles
as a coarse cross-check.

Usage:
    python benchmarks/bench_kernels.py [--repeat N] [--seed S]
"""

import argparse
import random
import statistics
import time

from harmlesskit._core import available_backends
from harmlesskit.generators import random_instance
from harmlesskit.solvers import brute_force_max, vc_solve


def time_backend(fn, backend, corpus, repeat):
    runs = []
    results = []
    for _ in range(repeat):
        results.clear()
        start = time.perf_counter()
        for inst in corpus:
            results.append(fn(inst, backend=backend)[0])
        runs.append(time.perf_counter() - start)
    return min(runs), results


def bench(name, fn, corpus, repeat):
    rows = []
    reference = None
    for backend in available_backends():
        best, results = time_backend(fn, backend, corpus, repeat)
        if reference is None:
            reference = results
        elif results != reference:
            raise SystemExit(f"{name}: backends disagree!")
        rows.append((backend, best))
    rows.sort()
    base = dict(rows).get("pure")
    print(f"\n{name} ({len(corpus)} instances, best of {repeat}):")
    for backend, secs in rows:
        speedup = "" if base is None or backend == "pure" else f"  ({base / secs:5.1f}x vs pure)"
        print(f"  {backend:>9}: {secs * 1000:8.1f} ms{speedup}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    brute_corpus = [
        random_instance(rng, 26, edge_prob=0.2, t_max=6) for _ in range(20)
    ]
    vc_corpus = [
        random_instance(rng, rng.randint(12, 16), edge_prob=0.25, t_max=5)
        for _ in range(20)
    ]

    print("backends available:", ", ".join(available_backends()))
    bench("brute_force_max (n=26, t<=6)", lambda inst, backend: brute_force_max(inst, backend=backend, cap=30), brute_corpus, args.repeat)
    bench("vc_solve (n in 12..16)", vc_solve, vc_corpus, args.repeat)

    sizes = [len(c) for c in (brute_corpus, vc_corpus)]
    med = statistics.median(inst.n for inst in brute_corpus + vc_corpus)
    print(f"\ncorpora: {sizes[0]}+{sizes[1]} instances, median n = {med}")


if __name__ == "__main__":
    main()
