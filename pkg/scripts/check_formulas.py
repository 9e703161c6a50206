#!/usr/bin/env python3
"""Compare every measured PAR and tile count with its closed form, exactly."""
import argparse
import json
import sys
import time

from parlab.experiments import check_formulas


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=8)
    ap.add_argument("--tpg-kmax", type=int, default=6)
    ap.add_argument("--sealed-kmax", type=int, default=10)
    ap.add_argument("--out", help="write all checks as JSON here")
    args = ap.parse_args()
    t0 = time.perf_counter()
    checks = check_formulas(args.kmax, tpg_kmax=args.tpg_kmax, sealed_kmax=args.sealed_kmax)
    failed = [c for c in checks if not c["ok"]]
    print(f"{len(checks)} checks, {len(failed)} failed, {time.perf_counter() - t0:.1f}s")
    for c in failed[:20]:
        print("  FAIL", c)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(checks, fh, indent=1)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
