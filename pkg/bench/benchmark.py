"""Compiled vs pure-Python kernels: wall time per inversion and op-count parity.

    python bench/benchmark.py [--sizes 16,32,64] [--repeat 3] [--seed 42]

For every (method, n) the same matrix is inverted with each backend.  The
table shows the best-of-``repeat`` time, the speedup, and whether results
and operation counts agree bit for bit.
"""

from __future__ import annotations

import argparse
import sys
import time

import cholinv
from cholinv import ALL_METHODS, OpCounter, invert, make_prng, random_hermitian_pd


def best_time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_one(a, method, repeat):
    out = {}
    for name in ("compiled", "python"):
        with cholinv.use_backend(name):
            counter = OpCounter()
            x = invert(a, method, counter)
            secs = best_time(lambda: invert(a, method), repeat)
        out[name] = (secs, x, counter)
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="16,32,64")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args(argv)

    if "compiled" not in cholinv.available_backends():
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1

    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'method':<14} {'n':>4} {'compiled s':>11} {'python s':>10} {'speedup':>8}  bitwise  counts")
    all_match = True
    for n in sizes:
        a = random_hermitian_pd(n, make_prng(args.seed, 2, n))
        for m in ALL_METHODS:
            r = bench_one(a, m, args.repeat)
            (tc, xc, cc), (tp, xp, cp) = r["compiled"], r["python"]
            same_x = xc.tobytes() == xp.tobytes()
            same_c = cc == cp
            all_match &= same_x and same_c
            print(f"{m.value:<14} {n:>4} {tc:>11.2e} {tp:>10.2e} {tp / tc:>7.0f}x  "
                  f"{'yes' if same_x else 'NO':<7}  {'yes' if same_c else 'NO'}")
    return 0 if all_match else 2


if __name__ == "__main__":
    sys.exit(main())
