#!/usr/bin/env python3
"""Probability-mass PAR of the two-distribution counterexample, and friends."""
import argparse
from fractions import Fraction

from parlab.experiments import counterexample_mass_pars
from parlab.par import additive_distance, cardinality, discrete_distance, generalized_par, l1_distance
from parlab.protocols import bisection_auction, induced_tiling
from parlab.tiling import build_table, ideal_partition


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[4, 8, 16])
    ap.add_argument("--eps", nargs="+", default=["1/8", "1/16", "1/100"])
    args = ap.parse_args()
    print("n,eps,par_D1,par_D2")
    for n in args.n:
        for eps in args.eps:
            a, b = counterexample_mass_pars(n, Fraction(eps))
            print(f"{n},{eps},{a},{b}")
    print()
    print("k,measure,avg_par")
    for k in range(1, 5):
        t = build_table("2spa", k)
        tiling, ideal = induced_tiling(bisection_auction(k), t), ideal_partition(t)
        for name, m in (("cardinality", cardinality()),
                        ("additive-discrete", additive_distance(discrete_distance)),
                        ("additive-l1", additive_distance(l1_distance))):
            print(f"{k},{name},{generalized_par(tiling, ideal, m, 'avg').value}")


if __name__ == "__main__":
    main()
