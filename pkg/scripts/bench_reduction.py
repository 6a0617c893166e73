"""Compare the full cochain complex with its degree-zero part for borel_sl(N).

Prints per-n column counts and rank timings; the column ratio at the middle
degree is the quantity of interest.
"""

import argparse
import time

from liecohom import betti_numbers, builtin_algebra, cartan_grading, make_module
from liecohom.fields import Field


def bench(N, module, field, skip_full=False):
    alg, tag = builtin_algebra("borel_sl", N, field)
    mod = make_module(module, alg)
    grading = cartan_grading(alg, mod, tag.indices)
    t0 = time.perf_counter()
    red = betti_numbers(alg, mod, grading)
    t_red = time.perf_counter() - t0
    full, t_full = None, None
    if not skip_full:
        t0 = time.perf_counter()
        full = betti_numbers(alg, mod)
        t_full = time.perf_counter() - t0
    return red, full, t_red, t_full


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--module", default="trivial", choices=["trivial", "adjoint"])
    ap.add_argument("--field", default="Q")
    ap.add_argument("--reduced-only", action="store_true")
    args = ap.parse_args()
    field = Field.parse(args.field)

    for N in args.N:
        red, full, t_red, t_full = bench(N, args.module, field, args.reduced_only)
        print(f"borel_sl({N}), {args.module}, {field}")
        for r in red.per_n:
            ratio = r.dim_C_full / r.dim_C_reduced if r.dim_C_reduced else float("inf")
            print(f"  n={r.n:<3} full={r.dim_C_full:<7} reduced={r.dim_C_reduced:<5} "
                  f"ratio={ratio:8.1f}  betti={r.betti}")
        line = f"  reduced {t_red:.2f}s"
        if full is not None:
            line += f", full {t_full:.2f}s, agree={full.betti == red.betti}"
        print(line)


if __name__ == "__main__":
    main()
