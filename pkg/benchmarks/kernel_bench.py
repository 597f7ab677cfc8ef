#!/usr/bin/env python3
"""Timing comparison of the compiled and NumPy kernel backends.

Runs each hot kernel (phase encoding, decode sums, squash and its gradient)
over a sweep of batch sizes on both backends and prints per-call timings
plus the speedup.  Timings use the best of several repeats to damp noise.

Usage:
    python benchmarks/kernel_bench.py
    python benchmarks/kernel_bench.py --sizes 1000,100000 --repeats 9
"""

import argparse
import time

import numpy as np

from phasecoder import backend

DEFAULT_SIZES = (1_000, 10_000, 100_000)
DEFAULT_REPEATS = 7
N_STEP = 3
SEED = 0


def best_of(fn, repeats):
    """Smallest wall time of ``repeats`` calls, in seconds."""
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def make_inputs(size, rng):
    phi = np.ascontiguousarray(rng.uniform(-np.pi, np.pi, size))
    codes = np.ascontiguousarray(rng.uniform(-1, 1, (size, N_STEP)))
    x = np.ascontiguousarray(rng.uniform(-20, 20, size))
    return phi, codes, x


def time_backend(which, size, repeats, rng):
    k = backend.use(which)
    phi, codes, x = make_inputs(size, rng)
    return {
        "encode_batch": best_of(lambda: k.encode_batch(phi, N_STEP), repeats),
        "decode_sums": best_of(lambda: k.decode_sums(codes), repeats),
        "squash": best_of(lambda: k.squash(x), repeats),
        "squash_grad": best_of(lambda: k.squash_grad(x), repeats),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        default=",".join(str(s) for s in DEFAULT_SIZES),
        help="comma-separated batch sizes (default %(default)s)",
    )
    parser.add_argument(
        "--repeats", type=int, default=DEFAULT_REPEATS, help="timing repeats per cell"
    )
    args = parser.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    names = backend.available()
    if "compiled" not in names:
        print("compiled backend not built; timing the python backend only")

    original = backend.name
    try:
        for size in sizes:
            rows = {}
            for which in names:
                # fresh but identical inputs per backend
                rows[which] = time_backend(which, size, args.repeats, np.random.default_rng(SEED))
            print(f"\nbatch size {size}")
            print(f"{'kernel':<14}" + "".join(f"{which:>12}" for which in names) + "     speedup")
            for kernel in ("encode_batch", "decode_sums", "squash", "squash_grad"):
                cells = "".join(f"{rows[which][kernel] * 1e6:>10.1f}us" for which in names)
                if "compiled" in names and "python" in names:
                    ratio = rows["python"][kernel] / rows["compiled"][kernel]
                    cells += f"{ratio:>10.1f}x"
                print(f"{kernel:<14}{cells}")
    finally:
        backend.use(original)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
