"""Print p-adic convergence profiles and the slack over the v_N >= N - 1 floor.

    python scripts/padic_profiles.py --primes 3 5 7 --n-max 5 -K 8
"""

import argparse

from qeuler.padic import FSpec, PadicQ, convergence_profile


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("-K", type=int, default=8)
    ap.add_argument("--m-max", type=int, default=4)
    ap.add_argument("--a-max", type=int, default=2)
    args = ap.parse_args()

    worst = None
    print(f"{'p':>3} {'m':>3} {'a':>3}  profile  min slack")
    for p in args.primes:
        q = PadicQ.from_t(p, args.K)
        for m in range(args.m_max + 1):
            for a in range(args.a_max + 1):
                prof = convergence_profile(p, args.K, FSpec(m, a), q, args.n_max)
                slack = min(v - (N - 1) for N, v in prof)
                worst = slack if worst is None else min(worst, slack)
                vals = " ".join(str(v) for _, v in prof)
                print(f"{p:>3} {m:>3} {a:>3}  {vals}  {slack}")
    print(f"smallest slack over grid: {worst}")


if __name__ == "__main__":
    main()
