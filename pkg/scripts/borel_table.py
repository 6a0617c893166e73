"""Betti numbers of the Borel subalgebra of sl(N) over Q and several F_p.

Rows with p <= N lie outside the hypotheses of the Borel theorem and are
printed for the record only.

    python3 scripts/borel_table.py --N 2 3 4 --primes 2 3 5 7
"""

import argparse
import json
from math import comb

from liecohom import Field, verify_borel_theorem


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--primes", type=int, nargs="*", default=[2, 3, 5, 7])
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args()

    rows = []
    for N in args.N:
        for field in [Field(0)] + [Field(p) for p in args.primes]:
            v = verify_borel_theorem(N, field)
            status = {True: "pass", False: "FAIL", None: "record"}[v.passed]
            rows.append(v.to_dict())
            print(f"N={N} {str(field):>6} {status:>6}  full={v.betti_full}")
            if v.betti_full != v.betti_reduced:
                print(f"{'':>15}reduced={v.betti_reduced}")
        print(f"{'':>15}C(N-1, n)={[comb(N - 1, n) for n in range(N)]}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
