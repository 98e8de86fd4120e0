#!/usr/bin/env python3
"""The heavier computations: the degree-12 search over F_5 (about 4.9e7
candidates, threaded), the quadrinomial sweeps of the 7- and 8-digit
primes, and the d = 8, 9 Groebner checks.

Usage: python3 scripts/long_runs.py [--skip-f5]
"""

import argparse
import time

from casasalvero.arith import PrimeField
from casasalvero.casas import (SearchOptions, exhaustive_search, quad_scan,
                               vector_to_poly)
from casasalvero.multipoly import WeightedOrder, buchberger_is_gb, \
    generic_resultant
from casasalvero.unipoly import format_poly


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--skip-f5", action="store_true")
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()

    for p in (7783207, 40362599):
        t0 = time.perf_counter()
        r = quad_scan(p)
        pts = [(h.coeffs[1], h.coeffs[3]) for h in r.hits]
        print(f"quad p = {p}: {len(r.hits)} rational point(s) {pts} "
              f"in {time.perf_counter() - t0:.1f}s")

    for d, p in ((8, 2), (9, 3)):
        t0 = time.perf_counter()
        gens = [generic_resultant(d, i, char=p) for i in range(1, d)]
        cert = buchberger_is_gb(gens, WeightedOrder(d - 1), max_pairs=100000)
        print(f"groebner d = {d} mod {p}: {cert.is_groebner} "
              f"({len(cert.pairs_reduced)} pairs reduced, "
              f"{len(cert.pairs_skipped)} skipped) "
              f"in {time.perf_counter() - t0:.1f}s")

    if not args.skip_f5:
        t0 = time.perf_counter()
        F5 = PrimeField(5)
        r = exhaustive_search(12, F5, SearchOptions(budget=5 * 10**7,
                                                    threads=args.threads))
        print(f"d = 12 over F_5: {len(r.hits)} hits in "
              f"{time.perf_counter() - t0:.1f}s; first: "
              f"{format_poly(vector_to_poly(r.hits[0].coeffs, 12, F5))}")


if __name__ == "__main__":
    main()
