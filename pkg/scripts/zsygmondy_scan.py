"""Exceptional set of the shifted sequence on the example curve, with cofactor statistics."""

import argparse
import time

from cmeds.config import ScanConfig
from cmeds.curve import WeierstrassCurve
from cmeds.sequences import zsygmondy


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-norm", type=int, default=1600)
    ap.add_argument("--rho-iterations", type=int, default=20_000)
    args = ap.parse_args()

    E = WeierstrassCurve.from_coefficients([0, 0, 0, -11, 890])
    P, Q = E.point(-1, 30), E.point(7, 34)
    start = time.perf_counter()
    rep = zsygmondy(E, P, Q, "Z", args.max_norm, ScanConfig(rho_iterations=args.rho_iterations))
    elapsed = time.perf_counter() - start
    partial = [r for r in rep.records if not r.is_zero and not r.term.complete]
    via_cofactor = [r for r in rep.records if r.witness and r.witness.startswith("<")]
    print(f"exceptional indices: {[str(a) for a in rep.exceptional]}")
    print(f"largest exceptional norm: {rep.largest_norm}")
    print(f"terms left with an unfactored cofactor: {len(partial)}")
    print(f"verdicts decided by a cofactor: {len(via_cofactor)}")
    print(f"# {len(rep.records)} terms, {elapsed:.2f} s")


if __name__ == "__main__":
    main()
