#!/usr/bin/env python3
"""Benchmark the two Hilbert-transform evaluation routes.

Times the exact summation route against the FFT linear-convolution route on
random signed inputs of increasing support, checks that they agree to 1e-9
relative where the output is not tiny, and prints a table (optionally CSV).

Usage:
    python3 scripts/bench_hilbert_paths.py
    python3 scripts/bench_hilbert_paths.py --sizes 4096,16384,65536 --csv
"""

import argparse
import sys

from calderon.operators import bench_hilbert


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1024,4096,16384,65536",
                    help="comma-separated support sizes")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--csv", action="store_true", help="emit CSV instead of a table")
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    rows = bench_hilbert(sizes, seed=args.seed)

    agreement_ok = all(r.max_relative_deviation <= 1e-9 for r in rows)
    if args.csv:
        print("size,naive_seconds,fast_seconds,speedup,max_relative_deviation")
        for r in rows:
            print(f"{r.size},{r.naive_seconds:.6f},{r.fast_seconds:.6f},"
                  f"{r.speedup:.2f},{r.max_relative_deviation:.3e}")
    else:
        print(f"{'support':>8} {'naive (s)':>10} {'fast (s)':>10} "
              f"{'speedup':>8} {'max rel dev':>12}")
        for r in rows:
            print(f"{r.size:>8} {r.naive_seconds:>10.4f} {r.fast_seconds:>10.4f} "
                  f"{r.speedup:>7.1f}x {r.max_relative_deviation:>12.3e}")
        print(f"\nroutes agree to 1e-9: {'yes' if agreement_ok else 'NO'}")
    return 0 if agreement_ok else 1


if __name__ == "__main__":
    sys.exit(main())
