"""Benchmark the compiled segment kernel against the pure-Python fallback.

Runs the same sieve workloads in two subprocesses, one per kernel (the
kernel is chosen at import time via PRIMELAB_KERNEL), checks that the
numeric outputs agree exactly, and prints a timing table.

Usage:
    python3 benchmarks/bench_sieve.py [--limit 10000000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

_WORKER = r"""
import json, sys, time
import primelab as pl

limit = int(sys.argv[1])
repeat = int(sys.argv[2])

def timed(fn, *args):
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return value, best

rows = {}
rows["prime_pi"] = timed(pl.prime_pi, limit)
theta, t_theta = timed(pl.chebyshev_theta, limit)
rows["chebyshev_theta"] = (theta, t_theta)
psi, t_psi = timed(pl.chebyshev_psi, limit)
rows["chebyshev_psi"] = (psi, t_psi)
gaps, t_gaps = timed(pl.max_gap_scan, limit)
rows["max_gap_scan"] = (gaps[-1].gap, t_gaps)

print(json.dumps({
    "backend": pl.BACKEND,
    "rows": {k: [v, t] for k, (v, t) in rows.items()},
}))
"""


def run_backend(kernel: str, limit: int, repeat: int) -> dict:
    env = dict(os.environ, PRIMELAB_KERNEL=kernel)
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, str(limit), str(repeat)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, default=10**7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    results = {}
    for kernel in ("cython", "python"):
        try:
            results[kernel] = run_backend(kernel, args.limit, args.repeat)
        except subprocess.CalledProcessError as exc:
            print(f"{kernel} kernel unavailable: {exc.stderr.strip()}")
    if len(results) < 2:
        print("need both kernels built to compare; timings above are partial")
        return 1

    cy = results["cython"]["rows"]
    py = results["python"]["rows"]
    mismatches = [k for k in cy if cy[k][0] != py[k][0]]

    print(f"\nlimit = {args.limit:,}   (best of {args.repeat})")
    print(f"{'function':<18} {'cython':>10} {'python':>10} {'speedup':>9}   value")
    for name in cy:
        tc, tp = cy[name][1], py[name][1]
        print(
            f"{name:<18} {tc:>9.3f}s {tp:>9.3f}s {tp / tc:>8.1f}x   {cy[name][0]}"
        )
    if mismatches:
        print(f"\nKERNEL DISAGREEMENT in: {', '.join(mismatches)}")
        return 1
    print("\nkernels agree exactly on every value")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
