#!/usr/bin/env python3
"""Benchmark the compiled 2D peeling kernel against the pure fallback.

Peels centered grids [-n, n]^2 of the requested side lengths with both
implementations, checks that they produce identical layer assignments,
and reports the best-of-k wall time for each. The fallback cost grows
quickly (its work is roughly points * layers), so keep large sides to
the compiled kernel unless you have time to spare.

Usage:
    python3 benchmarks/bench_peel2d.py
    python3 benchmarks/bench_peel2d.py --sides 51,101,201 --repeats 5
"""

import argparse
import os
import sys
import time

from onionpeel import Grid, materialize
from onionpeel.kernels import HAVE_NUMBA, NO_NUMBA_ENV, peel2d_layers


def timed(s, compiled, repeats):
    if compiled:
        os.environ.pop(NO_NUMBA_ENV, None)
    else:
        os.environ[NO_NUMBA_ENV] = "1"
    best = None
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = peel2d_layers(s)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return result, best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sides",
        default="51,101",
        help="comma-separated odd grid side lengths (default 51,101)",
    )
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args(argv)
    sides = [int(tok) for tok in args.sides.split(",") if tok.strip()]
    if any(side < 1 or side % 2 == 0 for side in sides):
        parser.error("sides must be positive odd integers")

    if not HAVE_NUMBA:
        print("numba is not importable; nothing to compare", file=sys.stderr)
        return 1

    # compile outside the timed region
    peel2d_layers(materialize(Grid(2, 1)))

    header = f"{'side':>6} {'points':>8} {'layers':>7} {'fallback':>10} {'kernel':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for side in sides:
        n = (side - 1) // 2
        s = materialize(Grid(2, n))
        plain, t_plain = timed(s, compiled=False, repeats=args.repeats)
        fast, t_fast = timed(s, compiled=True, repeats=args.repeats)
        if (list(plain[0]), plain[1]) != (list(fast[0]), fast[1]):
            print(f"side {side}: implementations disagree!", file=sys.stderr)
            return 2
        print(
            f"{side:>6} {len(s):>8} {fast[1]:>7} "
            f"{t_plain:>9.3f}s {t_fast:>9.3f}s {t_plain / t_fast:>7.1f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
