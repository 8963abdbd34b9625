"""Run the good-prime lemma checks on the example curve and tabulate outcomes by tag."""

import argparse
import collections
import time

from cmeds.curve import WeierstrassCurve
from cmeds.sequences import LemmaSuite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-norm", type=int, default=1600)
    ap.add_argument("--prime-cap", type=int, default=10_000)
    args = ap.parse_args()

    E = WeierstrassCurve.from_coefficients([0, 0, 0, -11, 890])
    P, Q = E.point(-1, 30), E.point(7, 34)
    start = time.perf_counter()
    reports = LemmaSuite(E, P, Q, "Z").run(args.max_norm, args.prime_cap)
    elapsed = time.perf_counter() - start

    counts = collections.Counter((r.tag, r.status) for r in reports)
    tags = sorted({r.tag for r in reports})
    print(f"{'tag':<10}{'pass':>8}{'fail':>8}{'vacuous':>9}")
    for t in tags:
        print(f"{t:<10}{counts[t, 'pass']:>8}{counts[t, 'fail']:>8}{counts[t, 'vacuous']:>9}")
    pairs = len({(r.alpha, r.prime) for r in reports})
    print(f"# {pairs} (alpha, prime) pairs, {len(reports)} reports, {elapsed:.2f} s")
    for r in reports:
        if r.status == "fail":
            print("FAIL", r.as_dict())


if __name__ == "__main__":
    main()
