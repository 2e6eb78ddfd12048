"""Compiled kernel versus pure-Python fallback on the standard configurations.

    python benchmarks/bench_enumeration.py [--repeat 3] [--threads 1]

Both backends must produce identical tables; the script exits non-zero
if they do not.
"""

from __future__ import annotations

import argparse
import sys
import time

from weightedsaw import enumeration
from weightedsaw.standard import ex5, free_group_nn, heisenberg_nn, z2_nn, z_harmonic

CASES = [
    ("z2_nn m=8", lambda: z2_nn(8)),
    ("z2_nn m=10", lambda: z2_nn(10)),
    ("z2_nn m=12", lambda: z2_nn(12)),
    ("heisenberg_nn m=7", lambda: heisenberg_nn(7)),
    ("free_group_nn m=7", lambda: free_group_nn(7)),
    ("ex5 m=7", lambda: ex5(7)),
    ("z_harmonic m=12", lambda: z_harmonic(12)),
]


def best_time(fn, repeat: int) -> tuple:
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)
    if enumeration.BACKEND != "compiled":
        print("compiled kernel not available; build it with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'case':<20}{'nodes':>12}{'compiled s':>12}{'python s':>12}{'speedup':>9}")
    ok = True
    for name, make in CASES:
        cfg = make()
        tc, fast = best_time(lambda: enumeration.enumerate_aggregate(cfg, args.threads, "compiled"), args.repeat)
        tp, slow = best_time(lambda: enumeration.enumerate_aggregate(cfg, args.threads, "python"), 1)
        same = fast.rows == slow.rows and fast.maxdh == slow.maxdh
        ok &= same
        flag = "" if same else "  MISMATCH"
        print(f"{name:<20}{fast.meta['nodes']:>12}{tc:>12.4f}{tp:>12.4f}{tp / tc:>8.1f}x{flag}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
