#!/usr/bin/env python3
"""Benchmark the compiled kernel lane against the numpy fallback.

Usage:  python benchmarks/bench_kernels.py [--repeat 5]

Times the three hot kernels at probe-bench-realistic shapes and prints a
small table; exits cleanly when the compiled lane is unavailable.
"""

import argparse
import time

import numpy as np

from semprobe import kernels


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    lanes = kernels.available_lanes()
    print(f"lanes available: {', '.join(sorted(lanes))} (active: {kernels.LANE})")
    if "c" not in lanes:
        print("compiled lane not built; install with a C toolchain to compare")

    rng = np.random.default_rng(0)
    cases = []

    logits = rng.normal(size=(10000, 6))
    labels = rng.integers(0, 6, size=10000)
    cases.append(("softmax_xent 10000x6", lambda mod: mod.softmax_xent(logits, labels)))

    a = rng.normal(size=(2400, 1024))
    b = rng.normal(size=(2400, 1024))
    cases.append(("cosine_many 2400x1024", lambda mod: mod.cosine_many(a, b)))

    margins = rng.uniform(-0.5, 0.5, size=100000)
    grid = np.linspace(-0.3, 0.3, 13)
    cases.append(("count_exceeding 100k/13", lambda mod: mod.count_exceeding(margins, grid)))

    width = max(len(name) for name, _ in cases)
    header = f"{'kernel':<{width}}  " + "  ".join(f"{lane:>10}" for lane in sorted(lanes))
    if len(lanes) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    for name, fn in cases:
        times = {lane: _time(lambda mod=mod: fn(mod), args.repeat) for lane, mod in lanes.items()}
        row = f"{name:<{width}}  " + "  ".join(f"{times[lane] * 1e3:>8.2f}ms" for lane in sorted(lanes))
        if len(times) == 2:
            row += f"  {times['python'] / times['c']:>7.2f}x"
        print(row)


if __name__ == "__main__":
    main()
