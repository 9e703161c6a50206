"""Experiment drivers: measured PARs next to their closed forms.

Each driver returns a plain report dict (config echo, rows, checks, ``ok``)
that the CLI serializes.  Measurements for a given (problem, protocol, k,
parameters) under the uniform distribution are cached for the life of the
process, since the tables, checks and sweeps overlap heavily.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import formulas as fm
from .par import (
    Distribution,
    ParReport,
    distribution_from_json,
    frac_decimal,
    frac_str,
    generalized_par,
    measure_from_name,
    par_report,
    parse_frac,
    point_mass,
    seeded_random,
    table as table_dist,
    uniform,
)
from .problems import ProblemSpec
from .protocols import (
    Protocol,
    appendix_a_protocols,
    bisection_auction,
    bisection_protocol,
    bounded_bisection_auction,
    c_bisection_auction,
    english_auction,
    mass_counterexample,
    find_unsplittable_block,
    pg_bisection_protocol,
    sealed_bid,
    tiling_and_depth,
    tpg_reference_protocol,
    validate_protocol,
)
from .tiling import Tiling, build_table, ideal_partition


class ConfigError(ValueError):
    """Bad flag combination, raised before any computation."""


PAR_FIELDS = {
    "worst-objective": "worst_objective",
    "worst-wrt1": "worst_wrt1",
    "worst-wrt2": "worst_wrt2",
    "worst-subjective": "worst_subjective",
    "avg-objective": "avg_objective",
    "avg-wrt1": "avg_wrt1",
    "avg-wrt2": "avg_wrt2",
    "avg-subjective": "avg_subjective",
}

# protocol name -> problems it computes
PROTOCOL_HOMES = {
    "sealed": None,  # any problem
    "english": {"2spa"},
    "bisection": {"2spa", "millionaires", "public_good"},
    "bisection-auction": {"2spa"},
    "bisection-protocol": {"millionaires", "public_good"},
    "bba": {"2spa"},
    "cbisection": {"2spa"},
    "tpg-ref": {"truthful_public_good"},
    "appxa-P": {"appendix_a"},
    "appxa-Q": {"appendix_a"},
}


@dataclass
class ExperimentConfig:
    command: str = "analyze"
    problem: str = "2spa"
    protocol: str = "bisection"
    k: Optional[int] = None
    kmax: Optional[int] = None
    g: Optional[int] = None
    c: Optional[str] = None
    par: str = "all"
    measure: str = "cardinality"
    mode: str = "avg"
    view: str = "objective"
    dist: Optional[str] = None
    distance: str = "discrete"
    threshold: Optional[str] = None
    seed: int = 0
    trials: int = 8
    which: Optional[int] = None
    tiling: Optional[str] = None
    format: str = "json"
    out: Optional[str] = None
    export_tiling: Optional[str] = None

    def problem_spec(self) -> ProblemSpec:
        try:
            return ProblemSpec.parse(self.problem)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def c_value(self) -> Optional[Fraction]:
        if self.c is None:
            return None
        try:
            return parse_frac(self.c)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def k_values(self, default_kmax: int) -> list[int]:
        if self.k is not None and self.kmax is not None:
            raise ConfigError("give --k or --kmax, not both")
        if self.k is not None:
            ks = [self.k]
        else:
            ks = list(range(1, (self.kmax or default_kmax) + 1))
        if any(k < 1 for k in ks):
            raise ConfigError("k must be >= 1")
        return ks

    def validate(self) -> None:
        if self.par != "all" and self.par not in PAR_FIELDS:
            raise ConfigError(f"unknown --par {self.par!r}; choose all or one of {sorted(PAR_FIELDS)}")
        if self.format not in ("json", "csv"):
            raise ConfigError("--format must be json or csv")
        if self.mode not in ("worst", "avg"):
            raise ConfigError("--mode must be worst or avg")
        if self.view not in ("objective", "wrt1", "wrt2"):
            raise ConfigError("--view must be objective, wrt1 or wrt2")
        if self.command in ("analyze", "measure"):
            check_protocol(self.problem_spec(), self.protocol, self.g, self.c_value())


def check_protocol(spec: ProblemSpec, name: str, g=None, c=None) -> None:
    if name not in PROTOCOL_HOMES:
        raise ConfigError(f"unknown protocol {name!r}; choose from {sorted(PROTOCOL_HOMES)}")
    homes = PROTOCOL_HOMES[name]
    if homes is not None and spec.variant not in homes:
        raise ConfigError(f"protocol {name!r} does not compute {spec}; it is for {sorted(homes)}")
    if name == "bba" and g is None:
        raise ConfigError("bba needs --g")
    if name == "cbisection" and c is None:
        raise ConfigError("cbisection needs --c (a rational in (0, 1))")
    if name == "cbisection" and not 0 < c < 1:
        raise ConfigError("--c must lie in (0, 1)")


def build_protocol(spec: ProblemSpec, name: str, k: int, g=None, c=None) -> Protocol:
    check_protocol(spec, name, g, c)
    if name == "sealed":
        return sealed_bid(k, spec)
    if name == "english":
        return english_auction(k)
    if name in ("bisection", "bisection-auction", "bisection-protocol"):
        if spec.variant == "2spa":
            return bisection_auction(k)
        if spec.variant == "public_good":
            return pg_bisection_protocol(k)
        return bisection_protocol(k)
    if name == "bba":
        if not 0 <= g <= k:
            raise ConfigError(f"--g must lie in [0, {k}]")
        return bounded_bisection_auction(k, g)
    if name == "cbisection":
        return c_bisection_auction(k, c)
    if name == "tpg-ref":
        return tpg_reference_protocol(k, spec.c)
    if spec.n is not None and spec.n != k:
        raise ConfigError(f"appxa n={spec.n} needs k={spec.n}")
    P, Q = appendix_a_protocols(k)
    return P if name == "appxa-P" else Q


# --------------------------------------------------------------------------
# single measurements


@dataclass
class Measurement:
    problem: str
    protocol: str
    k: int
    g: Optional[int]
    c: Optional[Fraction]
    tiles: int
    comm_bits: int
    report: ParReport
    tile_counts: Optional[dict] = None
    seconds: float = 0.0

    def row(self, fields=None) -> dict:
        out = {"problem": self.problem, "protocol": self.protocol, "k": self.k,
               "g": self.g, "c": None if self.c is None else frac_str(self.c),
               "tiles": self.tiles, "comm_bits": self.comm_bits}
        for name in fields or ParReport.VALUE_FIELDS:
            val = self.report.value(name)
            out[name] = frac_str(val)
            out[name + "_decimal"] = frac_decimal(val)
        out["seconds"] = round(self.seconds, 3)
        return out


_CACHE: dict = {}


def measure_protocol(problem, protocol: str, k: int, g=None, c=None,
                     D: Optional[Distribution] = None, builder: Optional[Callable] = None,
                     keep_tiling: bool = False):
    """Validate, tile and measure one protocol; returns a :class:`Measurement`.

    ``builder(k, g)`` overrides the protocol construction (used to inject
    faulty protocols into the formula checks).  With ``keep_tiling`` the
    result is ``(measurement, table, tiling)``.
    """
    spec = problem if isinstance(problem, ProblemSpec) else ProblemSpec.parse(problem)
    c = None if c is None else Fraction(c)
    key = (str(spec), protocol, k, g, c)
    cacheable = D is None and builder is None and not keep_tiling
    if cacheable and key in _CACHE:
        return _CACHE[key]
    t0 = time.perf_counter()
    table = build_table(spec, k)
    p = builder(k, g) if builder is not None else build_protocol(spec, protocol, k, g, c)
    check = validate_protocol(p, table)
    if not check.ok:
        raise ValidationFailure(f"{p!r} is invalid on {spec} k={k}: {check.errors[0]}")
    tiling, depth = tiling_and_depth(p, table)
    report = par_report(tiling, table, D)
    counts = None
    if spec.variant == "2spa" and protocol in ("english", "bba", "bisection", "bisection-auction"):
        counts = fm.measured_tile_counts(tiling, table)
    elif spec.variant in ("millionaires", "public_good"):
        win = [table.labels[table.uniform_label_id(t.rows, t.cols)] for t in tiling.tiles]
        first = {"millionaires": 1, "public_good": "Build"}[spec.variant]
        counts = {"p1": sum(1 for w in win if w == first), "p2": sum(1 for w in win if w != first)}
    m = Measurement(str(spec), protocol, k, g, c, len(tiling), depth, report, counts,
                    time.perf_counter() - t0)
    if keep_tiling:
        return m, table, tiling
    if cacheable:
        _CACHE[key] = m
    return m


class ValidationFailure(RuntimeError):
    pass


def clear_cache() -> None:
    _CACHE.clear()


# --------------------------------------------------------------------------
# which closed forms apply where


def expected_values(spec: ProblemSpec, protocol: str, k: int, g=None, c=None) -> list[tuple]:
    """``(report field, relation, formula name, params)`` for a measured protocol."""
    v = spec.variant
    out = []

    def eq(fieldname, name, **params):
        out.append((fieldname, "==", name, params))

    if v == "2spa":
        if protocol == "cbisection" and c == Fraction(1, 2):
            protocol = "bisection"
        if protocol == "english":
            for f in ("avg_objective", "avg_wrt1", "avg_wrt2", "avg_subjective"):
                eq(f, "spa_english_avg", k=k)
        elif protocol in ("bisection", "bisection-auction"):
            eq("avg_objective", "spa_bisection_avg_obj", k=k)
            eq("avg_wrt1", "spa_bisection_wrt1", k=k)
            eq("avg_wrt2", "spa_bisection_wrt2", k=k)
            eq("avg_subjective", "spa_bisection_avg_subj", k=k)
        elif protocol == "bba":
            eq("avg_objective", "spa_bba_avg_obj", k=k, g=g)
            eq("avg_wrt1", "spa_bba_wrt1", k=k, g=g)
            eq("avg_wrt2", "spa_bba_wrt2", k=k, g=g)
            eq("avg_subjective", "spa_bba_avg_subj", k=k, g=g)
        elif protocol == "sealed":
            eq("avg_objective", "spa_sealed_avg_obj", k=k)
            eq("avg_wrt1", "spa_sealed_wrt1", k=k)
            eq("avg_wrt2", "spa_sealed_wrt2", k=k)
            eq("avg_subjective", "spa_sealed_avg_subj", k=k)
    elif v in ("millionaires", "public_good"):
        out.append(("avg_objective", ">=", "mp_lower_avg_obj", {"k": k}))
        if protocol in ("bisection", "bisection-protocol"):
            eq("avg_objective", "mp_bisection_avg_obj", k=k)
            eq("avg_subjective", "mp_bisection_avg_subj", k=k)
        elif protocol == "sealed":
            eq("avg_objective", "mp_largest_avg_obj", k=k)
    elif v == "truthful_public_good" and protocol == "tpg-ref" and spec.c >= 1:
        eq("avg_objective", "tpg_avg_obj", k=k, c=spec.c)
    elif v == "appendix_a" and k >= 3:
        if protocol == "appxa-P":
            eq("avg_objective", "appxa_P_avg_obj", n=k)
        elif protocol == "appxa-Q":
            eq("avg_objective", "appxa_Q_avg_obj", n=k)
    return out


def _check(label: str, measured: Fraction, relation: str, expected: Fraction, **ctx) -> dict:
    ok = measured == expected if relation == "==" else measured >= expected
    return {"check": label, **ctx, "measured": frac_str(measured), "relation": relation,
            "expected": frac_str(expected), "ok": ok}


def formula_checks(m: Measurement) -> list[dict]:
    spec = ProblemSpec.parse(m.problem)
    out = []
    for fieldname, rel, name, params in expected_values(spec, m.protocol, m.k, m.g, m.c):
        out.append(_check(name, m.report.value(fieldname), rel, fm.formula(name, **params),
                          problem=m.problem, protocol=m.protocol, k=m.k, g=m.g, field=fieldname))
    return out


def tile_count_checks(m: Measurement) -> list[dict]:
    if m.tile_counts is None:
        return []
    out = []
    ctx = dict(problem=m.problem, protocol=m.protocol, k=m.k, g=m.g)
    if "a" in m.tile_counts:
        g = {"english": 0}.get(m.protocol, m.g if m.g is not None else m.k)
        closed = fm.tile_closed_forms(g, m.k - g)
        rec = fm.tile_recurrences(g, m.k - g)
        for name in "abxyzuvw":
            got = Fraction(m.tile_counts[name])
            out.append(_check(f"tiles_{name}", got, "==", Fraction(closed[name]), **ctx))
            out.append(_check(f"tiles_{name}_recurrence", got, "==", Fraction(rec[name]), **ctx))
    elif m.protocol in ("bisection", "bisection-protocol"):
        out.append(_check("mp_bisection_tiles_p1", Fraction(m.tile_counts["p1"]), "==",
                          fm.formula("mp_bisection_tiles_p1", k=m.k), **ctx))
        out.append(_check("mp_bisection_tiles_p2", Fraction(m.tile_counts["p2"]), "==",
                          fm.formula("mp_bisection_tiles_p2", k=m.k), **ctx))
    return out


def _report(cfg: ExperimentConfig, rows: list, checks: list, **extra) -> dict:
    doc = {"config": asdict(cfg), "rows": rows, "checks": checks,
           "ok": all(c["ok"] for c in checks)}
    doc.update(extra)
    return doc


# --------------------------------------------------------------------------
# commands


def cmd_analyze(cfg: ExperimentConfig) -> dict:
    cfg.validate()
    spec = cfg.problem_spec()
    c = cfg.c_value()
    fields = None if cfg.par == "all" else [PAR_FIELDS[cfg.par]]
    rows, checks = [], []
    for k in cfg.k_values(default_kmax=6):
        D = load_distribution(cfg.dist, k) if cfg.dist else None
        if cfg.export_tiling:
            m, _, tiling = measure_protocol(spec, cfg.protocol, k, cfg.g, c, D, keep_tiling=True)
            path = cfg.export_tiling if cfg.k is not None else f"{cfg.export_tiling}.k{k}"
            with open(path, "w") as fh:
                json.dump(tiling.to_json(k), fh)
        else:
            m = measure_protocol(spec, cfg.protocol, k, cfg.g, c, D)
        row = m.row(fields)
        if fields:
            row["value"] = row[fields[0]]
        rows.append(row)
        if D is None or D.is_uniform:
            wanted = formula_checks(m)
            if fields:
                wanted = [x for x in wanted if x["field"] == fields[0]]
            checks.extend(wanted)
    return _report(cfg, rows, checks)


TABLE_TITLES = {1: "Average-case PARs for the millionaires problem",
                2: "Average-case PARs for the second-price auction (uniform)"}


def _cell(table_no, row, k, g, column, measured, expected, relation="=="):
    ok = measured == expected if relation == "==" else measured >= expected
    return {"table": table_no, "row": row, "k": k, "g": g, "column": column,
            "measured": frac_str(measured), "measured_decimal": frac_decimal(measured),
            "formula": frac_str(expected), "relation": relation, "ok": ok}


def table1_cells(kmax: int) -> list[dict]:
    cells = []
    for k in range(1, kmax + 1):
        bound = fm.mp_lower_avg_obj(k)
        for proto in ("sealed", "bisection"):
            m = measure_protocol("millionaires", proto, k)
            cells.append(_cell(1, f"Any Protocol ({proto})", k, None, "objective",
                               m.report.avg_objective, bound, ">="))
        m = measure_protocol("millionaires", "bisection", k)
        cells.append(_cell(1, "Bisection Protocol", k, None, "objective",
                           m.report.avg_objective, fm.mp_bisection_avg_obj(k)))
        cells.append(_cell(1, "Bisection Protocol", k, None, "subjective",
                           m.report.avg_subjective, fm.mp_bisection_avg_subj(k)))
    return cells


def table2_cells(kmax: int) -> list[dict]:
    cells = []
    for k in range(1, kmax + 1):
        m = measure_protocol("2spa", "english", k)
        cells.append(_cell(2, "English Auction", k, None, "objective", m.report.avg_objective, Fraction(1)))
        cells.append(_cell(2, "English Auction", k, None, "subjective", m.report.avg_subjective, Fraction(1)))
        for g in range(k + 1):
            m = measure_protocol("2spa", "bba", k, g)
            cells.append(_cell(2, "Bounded-Bisection Auction", k, g, "objective",
                               m.report.avg_objective, fm.spa_bba_avg_obj(k, g)))
            cells.append(_cell(2, "Bounded-Bisection Auction", k, g, "wrt1",
                               m.report.avg_wrt1, fm.spa_bba_wrt1(k, g)))
            cells.append(_cell(2, "Bounded-Bisection Auction", k, g, "wrt2",
                               m.report.avg_wrt2, fm.spa_bba_wrt2(k, g)))
            cells.append(_cell(2, "Bounded-Bisection Auction", k, g, "subjective",
                               m.report.avg_subjective, fm.spa_bba_avg_subj(k, g)))
        m = measure_protocol("2spa", "bisection", k)
        cells.append(_cell(2, "Bisection Auction", k, None, "objective",
                           m.report.avg_objective, fm.spa_bisection_avg_obj(k)))
        cells.append(_cell(2, "Bisection Auction", k, None, "subjective",
                           m.report.avg_subjective, fm.spa_bisection_avg_subj(k)))
        m = measure_protocol("2spa", "sealed", k)
        cells.append(_cell(2, "Sealed-Bid Auction", k, None, "objective",
                           m.report.avg_objective, fm.spa_sealed_avg_obj(k)))
        cells.append(_cell(2, "Sealed-Bid Auction", k, None, "subjective",
                           m.report.avg_subjective, fm.spa_sealed_avg_subj(k)))
    return cells


def cmd_tables(cfg: ExperimentConfig) -> dict:
    which = cfg.which
    if which not in (1, 2):
        raise ConfigError("tables needs --which 1 or --which 2")
    kmax = cfg.kmax or 10
    cells = table1_cells(kmax) if which == 1 else table2_cells(kmax)
    return _report(cfg, cells, [c for c in cells], title=TABLE_TITLES[which])


def check_formulas(kmax: int, bba_builder: Optional[Callable] = None,
                   tpg_kmax: int = 6, sealed_kmax: int = 10) -> list[dict]:
    """Exact comparisons of every measured PAR and tile count with its closed form.

    A protocol that fails validation or tiling shows up as a failed check
    carrying the error, rather than aborting the sweep.
    """
    checks: list[dict] = []

    def run(problem, protocol, k, g=None, c=None, builder=None):
        try:
            m = measure_protocol(problem, protocol, k, g, c, builder=builder)
        except Exception as exc:  # a broken protocol is a failed check, not a crash
            checks.append({"check": f"{protocol} runs", "problem": str(problem), "protocol": protocol,
                           "k": k, "g": g, "ok": False, "error": f"{type(exc).__name__}: {exc}"})
            return
        checks.extend(formula_checks(m))
        checks.extend(tile_count_checks(m))

    for k in range(1, kmax + 1):
        run("2spa", "english", k)
        run("2spa", "bisection", k)
        for g in range(k + 1):
            run("2spa", "bba", k, g, builder=bba_builder)
        if k <= sealed_kmax:
            run("2spa", "sealed", k)
            run("millionaires", "sealed", k)
        run("millionaires", "bisection", k)
        if k <= tpg_kmax:
            for c in range(1, 2 ** k):
                run(f"tpg:c={c}", "tpg-ref", k)
        if k >= 3:
            run("appxa", "appxa-P", k)
            run("appxa", "appxa-Q", k)
    return checks


def cmd_check_formulas(cfg: ExperimentConfig, bba_builder: Optional[Callable] = None) -> dict:
    kmax = cfg.kmax or cfg.k or 6
    t0 = time.perf_counter()
    checks = check_formulas(kmax, bba_builder)
    failed = [c for c in checks if not c["ok"]]
    return _report(cfg, [], checks, n_checks=len(checks), n_failed=len(failed),
                   first_failure=failed[0] if failed else None,
                   seconds=round(time.perf_counter() - t0, 2))


def cmd_sweep_g(cfg: ExperimentConfig) -> dict:
    if cfg.k is None:
        raise ConfigError("sweep-g needs --k")
    k = cfg.k
    rows, checks = [], []
    prev = None
    for g in range(k + 1):
        m = measure_protocol("2spa", "bba", k, g)
        rep = m.report
        rows.append({"k": k, "g": g,
                     "avg_objective": frac_str(rep.avg_objective),
                     "avg_objective_decimal": frac_decimal(rep.avg_objective),
                     "avg_wrt1": frac_str(rep.avg_wrt1),
                     "avg_wrt2": frac_str(rep.avg_wrt2),
                     "comm_bits": m.comm_bits,
                     "k_plus_2_pow_k_minus_g": k + 2 ** (k - g)})
        checks.extend(formula_checks(m))
        if prev is not None:
            checks.append(_check("monotone_in_g", rep.avg_objective, ">=", prev, k=k, g=g))
        prev = rep.avg_objective
    return _report(cfg, rows, checks)


def cmd_dist_conjecture(cfg: ExperimentConfig) -> dict:
    if cfg.trials <= 0:
        raise ConfigError("--trials must be positive")
    if cfg.k is None:
        raise ConfigError("dist-conjecture needs --k")
    spec = cfg.problem_spec()
    check_protocol(spec, cfg.protocol, cfg.g, cfg.c_value())
    k = cfg.k
    rng = random.Random(cfg.seed)
    rows = []
    best = None
    for trial in range(cfg.trials):
        if trial == 0:
            D, label = uniform(k), "uniform"
        else:
            sub = rng.randrange(2 ** 31)
            D, label = seeded_random(k, sub), f"seeded_random(seed={sub})"
        m = measure_protocol(spec, cfg.protocol, k, cfg.g, cfg.c_value(), D)
        row = {"trial": trial, "distribution": label,
               "avg_objective": frac_str(m.report.avg_objective),
               "avg_objective_decimal": frac_decimal(m.report.avg_objective),
               "avg_subjective": frac_str(m.report.avg_subjective),
               "avg_subjective_decimal": frac_decimal(m.report.avg_subjective)}
        rows.append(row)
        if best is None or m.report.avg_objective > best[0]:
            best = (m.report.avg_objective, trial, D)
    checks = []
    uni = measure_protocol(spec, cfg.protocol, k, cfg.g, cfg.c_value())
    checks.extend(formula_checks(uni))
    return _report(cfg, rows, checks, max_avg_objective=frac_str(best[0]),
                   argmax_trial=best[1], argmax_distribution=best[2].to_json())


def cmd_inducible(cfg: ExperimentConfig) -> dict:
    if not cfg.tiling:
        raise ConfigError("inducible needs a tiling file")
    try:
        with open(cfg.tiling) as fh:
            tiling = Tiling.from_json(json.load(fh))
        block = find_unsplittable_block(tiling)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"malformed tiling file {cfg.tiling}: {exc}") from None
    verdict = block is None
    extra = {"inducible": verdict}
    if not verdict:
        extra["unsplittable_block"] = [t.to_json() for t in block]
    return _report(cfg, [], [], **extra)


def cmd_measure(cfg: ExperimentConfig) -> dict:
    cfg.validate()
    spec = cfg.problem_spec()
    if cfg.k is None:
        raise ConfigError("measure needs --k")
    k = cfg.k
    D = load_distribution(cfg.dist, k) if cfg.dist else uniform(k)
    threshold = parse_frac(cfg.threshold) if cfg.threshold is not None else None
    try:
        meas = measure_from_name(cfg.measure, D, cfg.distance, threshold)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    m, table, tiling = measure_protocol(spec, cfg.protocol, k, cfg.g, cfg.c_value(), D, keep_tiling=True)
    res = generalized_par(tiling, ideal_partition(table), meas, cfg.mode, D, cfg.view)
    row = {"problem": str(spec), "protocol": cfg.protocol, "k": k, "measure": meas.name,
           "mode": cfg.mode, "view": cfg.view, **res.to_json()}
    if cfg.view != "objective":
        row["extension"] = "measures on party slices go beyond the objective definition"
    checks = []
    if meas.name == "cardinality":
        base = m.report.value(f"{cfg.mode}_{cfg.view}")
        checks.append(_check("cardinality_matches_par", res.value, "==", base, k=k))
    return _report(cfg, [row], checks)


# --------------------------------------------------------------------------
# helpers shared with scripts and tests


def load_distribution(path: str, k: int) -> Distribution:
    if path == "uniform":
        return uniform(k)
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read distribution {path}: {exc}") from None
    try:
        return distribution_from_json(doc, 2 ** k, 2 ** k)
    except ValueError as exc:
        raise ConfigError(f"bad distribution {path}: {exc}") from None


def counterexample_distributions(n: int, eps) -> tuple[Distribution, Distribution]:
    """D1 puts ``eps`` on row 0 and the rest on rows 1..n; D2 the reverse."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ConfigError("eps must lie in (0, 1)")

    def build(top):
        entries = [(0, i, top / n) for i in range(n)]
        entries += [(j, i, (1 - top) / (n * n)) for j in range(1, n + 1) for i in range(n)]
        return table_dist(entries, n + 1, n)

    return build(eps), build(1 - eps)


def counterexample_mass_pars(n: int, eps) -> tuple[Fraction, Fraction]:
    from .par import probability_mass  # local: only this helper needs it
    table, p = mass_counterexample(n)
    tiling, _ = tiling_and_depth(p, table)
    ideal = ideal_partition(table)
    out = []
    for D in counterexample_distributions(n, eps):
        res = generalized_par(tiling, ideal, probability_mass(D), "avg", D)
        out.append(res.value)
    return out[0], out[1]


def point_mass_par(problem, protocol: str, k: int, cell, g=None, c=None) -> Fraction:
    size = 2 ** k
    D = point_mass(cell, size, size)
    return measure_protocol(problem, protocol, k, g, c, D).report.avg_objective


# --------------------------------------------------------------------------
# output


def _flatten(row: dict) -> dict:
    return {k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in row.items()}


def render(doc: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, default=str) + "\n"
    rows = doc.get("rows") or doc.get("checks") or []
    buf = io.StringIO()
    if rows:
        cols: list = []
        for r in rows:
            cols.extend(c for c in r if c not in cols)
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow(_flatten(r))
    return buf.getvalue()


def parse_report_rationals(doc) -> list[Fraction]:
    """Every exact rational in a report, in document order (for round-trip checks)."""
    out = []

    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        elif isinstance(x, str) and "/" in x:
            num, _, den = x.partition("/")
            if num.lstrip("-").isdigit() and den.isdigit():
                out.append(Fraction(int(num), int(den)))

    walk(doc)
    return out


COMMANDS = {
    "analyze": cmd_analyze,
    "tables": cmd_tables,
    "check-formulas": cmd_check_formulas,
    "sweep-g": cmd_sweep_g,
    "dist-conjecture": cmd_dist_conjecture,
    "inducible": cmd_inducible,
    "measure": cmd_measure,
}


def run_command(cfg: ExperimentConfig) -> dict:
    cfg.validate()
    return COMMANDS[cfg.command](cfg)

