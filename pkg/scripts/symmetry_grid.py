"""Run the invariance grid with timings and cache statistics.

    python scripts/symmetry_grid.py --m-max 6 --q-count 8
"""

import argparse
import time

from qeuler.euler import QEulerCache
from qeuler.symmetry import WeightVector, certify_bound, verify_invariance

GRID = [(1, 3), (3, 5), (5, 7), (1, 3, 5), (3, 5, 7)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m-max", type=int, default=6)
    ap.add_argument("--q-count", type=int, default=8)
    ap.add_argument("--x", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--bounds", action="store_true", help="also print certify bounds")
    args = ap.parse_args()

    cache = QEulerCache()
    total = time.perf_counter()
    for w in GRID:
        wv = WeightVector(w)
        for x in args.x:
            t0 = time.perf_counter()
            rep = verify_invariance(wv, args.m_max, x, args.q_count, seed=args.seed,
                                    cache=cache)
            dt = time.perf_counter() - t0
            line = (f"w={w} x={x}: {rep.verdict}  {dt:6.2f}s  "
                    f"new E evaluations={rep.euler_evaluations}")
            if args.bounds:
                line += "  D=" + ",".join(
                    str(certify_bound(wv, m, x)) for m in range(args.m_max + 1)
                )
            print(line)
    print(f"total {time.perf_counter() - total:.2f}s, cached E values {len(cache)}")


if __name__ == "__main__":
    main()
