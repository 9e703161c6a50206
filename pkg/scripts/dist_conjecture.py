#!/usr/bin/env python3
"""Average objective PAR of the bisection auction under random distributions.

Trial 0 is uniform; the rest are seeded random distributions.  Prints the
largest value seen, to probe whether uniform is the worst case.
"""
import argparse
import sys

from parlab.experiments import ExperimentConfig, render, run_command


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--protocol", default="bisection")
    args = ap.parse_args()
    doc = run_command(ExperimentConfig(command="dist-conjecture", k=args.k, trials=args.trials,
                                       seed=args.seed, protocol=args.protocol))
    sys.stdout.write(render(doc, "csv"))
    print(f"max avg objective {doc['max_avg_objective']} at trial {doc['argmax_trial']}")
    return 0 if doc["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
