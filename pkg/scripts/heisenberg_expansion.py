#!/usr/bin/env python3
"""Integrate every second-cohomology class of a Heisenberg algebra into an
hbar-series and verify the Yang-Baxter equation coefficient-wise.

Usage: python scripts/heisenberg_expansion.py [-m M] [-N ORDER]
"""

import argparse
import time

from ybrack import (
    assemble_series,
    catalog_get,
    ce_cohomology,
    integrate_deformation,
    verify_ybe_mod,
)
from ybrack.cohomology import quadratic_term
from ybrack.perturb import DeformationSeries, verify_series_sd


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("-m", type=int, default=2, help="Heisenberg parameter (dim 2m+1)")
    ap.add_argument("-N", type=int, default=4, help="truncation order")
    args = ap.parse_args()

    L = catalog_get("heisenberg", m=args.m)
    res = ce_cohomology(L, 2, "adjoint")
    print(f"heisenberg(m={args.m}): dim g = {L.dim}, "
          f"dim H^2(g,g) = {res.dim_H}, dim H^3(g,g) = {ce_cohomology(L, 3).dim_H}")
    print(f"integrating each of the {res.dim_H} classes to order {args.N}:\n")
    print(f"{'class':>5}  {'G(phi,phi)':>10}  {'integrated':>10}  {'YBE mod h^N+1':>13}  {'SD':>4}  {'time':>6}")
    for k, phi1 in enumerate(res.representatives):
        t0 = time.time()
        quad = "zero" if quadratic_term(L, phi1, phi1).is_zero() else "nonzero"
        S = integrate_deformation(L, phi1, args.N)
        if not isinstance(S, DeformationSeries):
            print(f"{k:>5}  {quad:>10}  obstructed at order {S.order}")
            continue
        ybe = verify_ybe_mod(assemble_series(L, S))
        sd = verify_series_sd(L, S)
        print(f"{k:>5}  {quad:>10}  {'yes':>10}  {str(ybe):>13}  {str(sd):>4}  {time.time()-t0:5.2f}s")


if __name__ == "__main__":
    main()
