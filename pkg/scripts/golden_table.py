"""Print B_n for the example curve and time the computation."""

import argparse
import time

from cmeds.curve import WeierstrassCurve, shifted_term

EXPECTED = ["(1)", "(2)^2", "(19)^2", "(6991)^2", "(12338681)^2", "(2)^2*(4890590069)^2"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=-6)
    ap.add_argument("--hi", type=int, default=6)
    args = ap.parse_args()

    E = WeierstrassCurve.from_coefficients([0, 0, 0, -11, 890])
    P, Q = E.point(-1, 30), E.point(7, 34)
    start = time.perf_counter()
    for n in range(args.lo, args.hi + 1):
        term = str(shifted_term(E, P, Q, n))
        mark = ""
        if 0 <= n < len(EXPECTED):
            mark = "  ok" if term == EXPECTED[n] else f"  MISMATCH (expected {EXPECTED[n]})"
        print(f"{n:>4}  {term}{mark}")
    print(f"# {time.perf_counter() - start:.3f} s")


if __name__ == "__main__":
    main()
