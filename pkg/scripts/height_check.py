"""Canonical heights, scaling checks and the Moebius-Mertens chain."""

import argparse
import math

from cmeds.curve import WeierstrassCurve, apply_endo
from cmeds.heights import canonical_height, mobius_mertens_chain, within_bounds
from cmeds.numberfield import GaussianInteger, ideal


def scaling_row(E, R, alpha, label):
    h = canonical_height(E, R)
    ha = canonical_height(E, apply_endo(E, alpha, R))
    n = GaussianInteger.coerce(alpha).norm()
    diff = ha.value - n * h.value
    ok = within_bounds(diff, ha.error_bound, n * h.error_bound)
    print(f"{label:<28}{str(alpha):>6}  diff={diff: .3e}  bound={ha.error_bound + n * h.error_bound:.3e}  {'ok' if ok else 'FAIL'}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha-max", type=int, default=40)
    args = ap.parse_args()

    E = WeierstrassCurve.from_coefficients([0, 0, 0, -11, 890])
    P, Q = E.point(-1, 30), E.point(7, 34)
    print(f"h(P) = {canonical_height(E, P)}")
    print(f"h(Q) = {canonical_height(E, Q)}")
    for n in (2, 3, 5):
        scaling_row(E, P, n, "y^2 = x^3 - 11x + 890")
    C = WeierstrassCurve.from_coefficients([0, 0, 0, -2, 0], "Qi", cm=True)
    R = C.point(-1, 1)
    print(f"h(R) = {canonical_height(C, R)}  on y^2 = x^3 - 2x")
    for a in (GaussianInteger(2), GaussianInteger(3), GaussianInteger(0, 1), GaussianInteger(1, 1), GaussianInteger(2, 1)):
        scaling_row(C, R, a, "y^2 = x^3 - 2x over Q(i)")

    print("alpha  sum*(log N)^2  sum>=prod^2")
    for alpha in range(10, args.alpha_max + 1):
        total, bound = mobius_mertens_chain(alpha, ideal(4), "Z")
        print(f"{alpha:>5}  {float(total) * math.log(alpha) ** 2:>13.4f}  {total >= bound}")


if __name__ == "__main__":
    main()
