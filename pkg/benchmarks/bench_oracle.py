"""Time the brute-force oracle on each available kernel backend.

Usage: python3 benchmarks/bench_oracle.py [--repeat N]
"""

import argparse
import random
import time
from fractions import Fraction

from swankink import _kernels
from swankink.oracle import max_vr, product_coeffs


def workload(seed=1):
    rng = random.Random(seed)
    cases = []
    for _ in range(6):
        xs = [2 * rng.randint(1, 15), 2 * rng.randint(1, 15)]
        for r in (Fraction(1, 4), Fraction(3, 8), Fraction(1, 2), Fraction(3, 4)):
            cases.append((product_coeffs(xs), r))
    return cases


def bench(backend, cases, repeat):
    best = float("inf")
    evals = 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        evals = sum(max_vr(c, 2, r, backend=backend)[1] for c, r in cases)
        best = min(best, time.perf_counter() - t0)
    return best, evals


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    cases = workload()
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if _kernels.HAVE_NUMBA:
        bench("numba", cases[:1], 1)  # compile outside the timing
    for b in backends:
        t, evals = bench(b, cases, args.repeat)
        print(f"{b:6s} {len(cases)} cases  {evals} batch calls  best {t:.3f} s")


if __name__ == "__main__":
    main()
