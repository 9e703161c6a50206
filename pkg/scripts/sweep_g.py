#!/usr/bin/env python3
"""Privacy/communication trade-off of the bounded-bisection auction as g varies."""
import argparse
import sys

from parlab.experiments import ExperimentConfig, render, run_command


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[4, 6, 8])
    args = ap.parse_args()
    ok = True
    for k in args.k:
        doc = run_command(ExperimentConfig(command="sweep-g", k=k))
        ok &= doc["ok"]
        sys.stdout.write(render(doc, "csv"))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
