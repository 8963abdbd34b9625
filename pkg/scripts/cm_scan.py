"""Primitive divisors and annihilator divisibility for y^2 = x^3 - 2x over Q(i)."""

import argparse
import time

from cmeds.curve import INFINITY, WeierstrassCurve
from cmeds.numberfield import canonical_associate, ideal
from cmeds.sequences import LemmaSuite, enumerate_indices, zsygmondy


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-norm", type=int, default=50)
    args = ap.parse_args()

    E = WeierstrassCurve.from_coefficients([0, 0, 0, -2, 0], "Qi", cm=True)
    P = E.point(-1, 1)
    start = time.perf_counter()
    suite = LemmaSuite(E, P, INFINITY, "Zi")
    bad = checked = 0
    for alpha in enumerate_indices("Zi", args.max_norm):
        for pi in suite.candidate_primes(alpha, None):
            checked += 1
            if not suite.ann(pi).divides(ideal(alpha)):
                bad += 1
                print(f"Ann at {pi} does not divide ({alpha})")
    rep = zsygmondy(E, P, INFINITY, "Zi", args.max_norm)
    reps = sorted({canonical_associate(a) for a in rep.exceptional}, key=lambda a: (a.norm(), a.re, a.im))
    print(f"(alpha, prime) pairs checked: {checked}, divisibility failures: {bad}")
    print(f"exceptional indices (up to associates): {', '.join(map(str, reps))}")
    print(f"largest exceptional norm: {rep.largest_norm} (scan cap {rep.max_norm})")
    print(f"# {time.perf_counter() - start:.2f} s")


if __name__ == "__main__":
    main()
