"""``par-lab``: measure protocol PARs from the command line.

Exit status is 0 when every requested exact-equality check passes, 1 when
one fails, and 2 on bad flags.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .experiments import ConfigError, ExperimentConfig, PAR_FIELDS, PROTOCOL_HOMES, render, run_command
from .par import DISTANCES
from .problems import ProblemError
from .protocols import ProtocolError


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", help="write the report here instead of stdout")


def _problem_flags(p: argparse.ArgumentParser, protocol_default: str = "bisection") -> None:
    p.add_argument("--problem", default="2spa",
                   help="millionaires|mp|2spa|pg|tpg:c=<int>|appxa[:n=<int>]")
    p.add_argument("--protocol", default=protocol_default, choices=sorted(PROTOCOL_HOMES))
    p.add_argument("--g", type=int, help="bisection budget for bba")
    p.add_argument("--c", help="split ratio for cbisection, e.g. 1/4")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="par-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="PARs of one protocol for one k or k = 1..kmax")
    _problem_flags(p)
    p.add_argument("--k", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--par", default="all", choices=["all", *PAR_FIELDS])
    p.add_argument("--dist", help="distribution JSON file, or 'uniform'")
    p.add_argument("--export-tiling", dest="export_tiling", help="write the induced tiling JSON here")
    _common(p)

    p = sub.add_parser("tables", help="reproduce the average-case PAR tables")
    p.add_argument("--which", type=int, choices=[1, 2], required=True)
    p.add_argument("--kmax", type=int)
    _common(p)

    p = sub.add_parser("check-formulas", help="measured == closed form, everywhere")
    p.add_argument("--kmax", type=int, default=6)
    _common(p)

    p = sub.add_parser("sweep-g", help="bounded-bisection auction for g = 0..k")
    p.add_argument("--k", type=int, required=True)
    _common(p)

    p = sub.add_parser("dist-conjecture", help="average PARs under seeded random distributions")
    _problem_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    _common(p)

    p = sub.add_parser("inducible", help="can some protocol induce this tiling?")
    p.add_argument("tiling", help="tiling JSON file")
    _common(p)

    p = sub.add_parser("measure", help="PAR under a generalized measure")
    _problem_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--measure", default="cardinality",
                   help="cardinality|probability-mass|additive-distance|max-distance|"
                        "plausible-deniability|relative-diameter")
    p.add_argument("--mode", choices=["worst", "avg"], default="avg")
    p.add_argument("--view", choices=["objective", "wrt1", "wrt2"], default="objective")
    p.add_argument("--dist", help="distribution JSON file, or 'uniform'")
    p.add_argument("--distance", default="discrete", choices=sorted(DISTANCES))
    p.add_argument("--threshold", help="plausibility threshold t in (0, 1]")
    _common(p)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    known = set(ExperimentConfig.__dataclass_fields__)
    cfg = ExperimentConfig(**{k: v for k, v in vars(args).items() if k in known})
    try:
        doc = run_command(cfg)
    except (ConfigError, ProblemError, ProtocolError) as exc:
        parser.error(str(exc))  # exits with status 2
    text = render(doc, cfg.format)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not doc["ok"]:
        failed = doc.get("first_failure") or next((c for c in doc["checks"] if not c["ok"]), None)
        print(f"par-lab: check failed: {failed}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
