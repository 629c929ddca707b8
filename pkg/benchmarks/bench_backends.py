#!/usr/bin/env python3
"""Compare the numba and numpy sampling kernels.

Runs each kernel under both backends on identical inputs, asserts the
outputs are bitwise equal, and prints a timing table.  The first numba
call includes JIT compilation; a warmup pass keeps it out of the timings.

Usage: python benchmarks/bench_backends.py [--quick]
"""

import argparse
import time

import numpy as np

from cprank import backend, sampling


def _time(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def run(quick: bool) -> None:
    names = ["numpy"]
    if backend.numba_available():
        names.insert(0, "numba")
    else:
        print("numba not importable; benchmarking numpy only")
    mods = {name: backend.kernels(name) for name in names}

    scale = 10 if quick else 1
    jobs = [
        ("sample yule n=8", "sample_rank_height",
         (0, 8, 400_000 // scale, np.uint64(0), 0, *sampling._kernel_tables(8))),
        ("sample catalan n=8", "sample_rank_height",
         (1, 8, 400_000 // scale, np.uint64(0), 0, *sampling._kernel_tables(8))),
        ("sample otter n=8", "sample_rank_height",
         (2, 8, 100_000 // scale, np.uint64(0), 0, *sampling._kernel_tables(8))),
        ("yule heights n=65536", "yule_heights",
         (65536, 2000 // scale, np.uint64(0), 0)),
        ("labeled heights n=4096", "remy_heights",
         (4096, 2000 // scale, np.uint64(0), 0)),
    ]

    if "numba" in mods:
        # trigger JIT compilation outside the timings
        warm = mods["numba"]
        warm.sample_rank_height(0, 4, 2, np.uint64(0), 0, *sampling._kernel_tables(8))
        warm.sample_rank_height(1, 4, 2, np.uint64(0), 0, *sampling._kernel_tables(8))
        warm.sample_rank_height(2, 4, 2, np.uint64(0), 0, *sampling._kernel_tables(8))
        warm.yule_heights(16, 2, np.uint64(0), 0)
        warm.remy_heights(16, 2, np.uint64(0), 0)

    width = max(len(j[0]) for j in jobs)
    header = f"{'kernel':<{width}}  " + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, fname, args in jobs:
        outs, times = {}, {}
        for name in names:
            outs[name], times[name] = _time(getattr(mods[name], fname), *args)
        if len(names) == 2:
            a, b = outs["numba"], outs["numpy"]
            if isinstance(a, tuple):
                same = all(np.array_equal(x, y) for x, y in zip(a, b))
            else:
                same = np.array_equal(a, b)
            assert same, f"backend outputs differ for {label}"
        line = f"{label:<{width}}  " + "".join(f"{times[n]:>11.3f}s" for n in names)
        if len(names) == 2:
            line += f"{times['numpy'] / times['numba']:>9.1f}x"
        print(line)
    if len(names) == 2:
        print("\nall kernel outputs bitwise identical across backends")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="10x smaller workloads")
    run(ap.parse_args().quick)
