"""Privacy-approximation ratios of protocol-induced tilings.

All values are exact :class:`fractions.Fraction` objects.  The objective
ratio at a cell compares the ideal region holding it with the protocol tile
holding it; the "with respect to party i" ratios first slice both by party
i's own value (party i knows it) and compare the slices.

For average PARs the per-cell sum is collapsed per tile: under the uniform
distribution a tile contributes ``|ideal region| / N`` no matter its size,
so averages over a million tiles stay integer arithmetic.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .tiling import Cell, FunctionTable, IdealPartition, Partition, Tiling, ideal_partition


class ParError(ValueError):
    pass


# --------------------------------------------------------------------------
# distributions


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise ParError("use exact rationals ('num/den' strings or Fractions), not floats")
    return Fraction(value)


class Distribution:
    """Exact probability mass over an ``nrows x ncols`` input grid.

    Three shapes: uniform, a product of two marginals, or an explicit table
    of masses kept as integer numerators over one common denominator.
    """

    def __init__(self, nrows: int, ncols: int, kind: str, p1=None, p2=None,
                 numerators: Optional[np.ndarray] = None, denominator: int = 1):
        self.nrows = nrows
        self.ncols = ncols
        self.kind = kind
        self.p1 = p1
        self.p2 = p2
        self.numerators = numerators
        self.denominator = denominator

    @property
    def is_uniform(self) -> bool:
        return self.kind == "uniform"

    @property
    def n_cells(self) -> int:
        return self.nrows * self.ncols

    def mass(self, cell: Cell) -> Fraction:
        r, c = cell
        if self.kind == "uniform":
            return Fraction(1, self.n_cells)
        if self.kind == "product":
            return self.p1[r] * self.p2[c]
        return Fraction(int(self.numerators[r, c]), self.denominator)

    def mass_rect(self, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
        if self.kind == "uniform":
            return Fraction(len(rows) * len(cols), self.n_cells)
        if self.kind == "product":
            return sum((self.p1[r] for r in rows), Fraction(0)) * sum((self.p2[c] for c in cols), Fraction(0))
        sub = self.numerators[np.ix_(list(rows), list(cols))]
        return Fraction(int(sub.sum()), self.denominator)

    def mass_cells(self, cells: Iterable[Cell]) -> Fraction:
        return sum((self.mass(c) for c in cells), Fraction(0))

    def dense(self) -> list[list[Fraction]]:
        return [[self.mass((r, c)) for c in range(self.ncols)] for r in range(self.nrows)]

    def check_dims(self, nrows: int, ncols: int) -> None:
        if (self.nrows, self.ncols) != (nrows, ncols):
            raise ParError(f"distribution is {self.nrows}x{self.ncols}, matrix is {nrows}x{ncols}")

    def to_json(self) -> dict:
        if self.kind == "uniform":
            return {"type": "uniform", "nrows": self.nrows, "ncols": self.ncols}
        if self.kind == "product":
            return {"type": "product", "p1": [frac_str(v) for v in self.p1],
                    "p2": [frac_str(v) for v in self.p2]}
        entries = [[int(r), int(c), frac_str(Fraction(int(self.numerators[r, c]), self.denominator))]
                   for r, c in zip(*np.nonzero(self.numerators))]
        return {"type": "table", "nrows": self.nrows, "ncols": self.ncols, "entries": entries}

    def __repr__(self):
        return f"Distribution({self.kind}, {self.nrows}x{self.ncols})"


def uniform(k: Optional[int] = None, nrows: Optional[int] = None, ncols: Optional[int] = None) -> Distribution:
    if k is not None:
        nrows = ncols = 1 << k
    if nrows is None or ncols is None:
        raise ParError("uniform needs k or nrows/ncols")
    return Distribution(nrows, ncols, "uniform")


def product(p1: Sequence, p2: Sequence) -> Distribution:
    """Independent marginals; each factor is normalized to sum to 1."""
    f1 = [_frac(v) for v in p1]
    f2 = [_frac(v) for v in p2]
    for vec in (f1, f2):
        if any(v < 0 for v in vec):
            raise ParError("negative mass")
        if sum(vec) == 0:
            raise ParError("marginal has zero total mass")
    s1, s2 = sum(f1), sum(f2)
    return Distribution(len(f1), len(f2), "product",
                        p1=[v / s1 for v in f1], p2=[v / s2 for v in f2])


def _from_masses(masses: dict, nrows: int, ncols: int) -> Distribution:
    denom = 1
    for v in masses.values():
        denom = denom * v.denominator // _gcd(denom, v.denominator)
    big = max((abs(v.numerator) * (denom // v.denominator) for v in masses.values()), default=0)
    dtype = np.int64 if big * max(1, len(masses)) < 2 ** 62 else object
    nums = np.zeros((nrows, ncols), dtype=dtype)
    for (r, c), v in masses.items():
        nums[r, c] = v.numerator * (denom // v.denominator)
    return Distribution(nrows, ncols, "table", numerators=nums, denominator=denom)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def table(entries: Iterable, nrows: int, ncols: int) -> Distribution:
    """Explicit ``(x1, x2, mass)`` entries; masses must sum to exactly 1."""
    masses: dict = {}
    for r, c, m in entries:
        r, c, m = int(r), int(c), _frac(m)
        if not (0 <= r < nrows and 0 <= c < ncols):
            raise ParError(f"cell {(r, c)} outside {nrows}x{ncols}")
        if m < 0:
            raise ParError(f"negative mass at {(r, c)}")
        masses[(r, c)] = masses.get((r, c), Fraction(0)) + m
    total = sum(masses.values(), Fraction(0))
    if total != 1:
        raise ParError(f"masses sum to {total}, not 1")
    return _from_masses(masses, nrows, ncols)


def point_mass(cell: Cell, nrows: int, ncols: int) -> Distribution:
    return table([(cell[0], cell[1], 1)], nrows, ncols)


def seeded_random(k: int, seed: int, grid: int = 16) -> Distribution:
    """Numerators drawn uniformly from ``0..grid`` per cell, then normalized."""
    if grid < 1:
        raise ParError("grid must be >= 1")
    size = 1 << k
    rng = random.Random(seed)
    nums = [[rng.randint(0, grid) for _ in range(size)] for _ in range(size)]
    total = sum(map(sum, nums))
    if total == 0:
        nums[rng.randrange(size)][rng.randrange(size)] = 1
        total = 1
    masses = {(r, c): Fraction(v, total) for r, row in enumerate(nums) for c, v in enumerate(row) if v}
    return _from_masses(masses, size, size)


def mixture(lam, d1: Distribution, d2: Distribution) -> Distribution:
    """``lam * d1 + (1 - lam) * d2`` as an explicit table."""
    lam = _frac(lam)
    if not 0 <= lam <= 1:
        raise ParError("mixing weight must lie in [0, 1]")
    if (d1.nrows, d1.ncols) != (d2.nrows, d2.ncols):
        raise ParError("mixing distributions of different shapes")
    masses = {}
    for r in range(d1.nrows):
        for c in range(d1.ncols):
            m = lam * d1.mass((r, c)) + (1 - lam) * d2.mass((r, c))
            if m:
                masses[(r, c)] = m
    return _from_masses(masses, d1.nrows, d1.ncols)


def distribution_from_json(doc: dict, nrows: int, ncols: int) -> Distribution:
    kind = doc.get("type")
    if kind == "uniform":
        return uniform(nrows=nrows, ncols=ncols)
    if kind == "product":
        d = product([parse_frac(v) for v in doc["p1"]], [parse_frac(v) for v in doc["p2"]])
        d.check_dims(nrows, ncols)
        return d
    if kind == "table":
        return table([(r, c, parse_frac(m)) for r, c, m in doc["entries"]],
                     doc.get("nrows", nrows), doc.get("ncols", ncols))
    raise ParError(f"unknown distribution type {kind!r}")


# --------------------------------------------------------------------------
# rationals on the wire


def frac_str(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_frac(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParError(f"not a rational: {text!r}") from None


def frac_decimal(v: Fraction, places: int = 6) -> str:
    v = Fraction(v)
    scaled = round(v * 10 ** places)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // 10 ** places}.{scaled % 10 ** places:0{places}d}"


# --------------------------------------------------------------------------
# PAR computations (cardinality measure)


def _tile_block_ids(tiling: Tiling, ideal: Partition) -> list[int]:
    """Block of ``ideal`` holding each tile; raises if a tile straddles blocks."""
    out = []
    fast = isinstance(ideal, IdealPartition)
    ids = ideal.table.ids if fast else None
    for tile in tiling.tiles:
        if fast and len(tile.rows) == 1 and len(tile.cols) == 1:
            out.append(int(ids[tile.rows[0], tile.cols[0]]))
            continue
        b = (ideal.table.uniform_label_id(tile.rows, tile.cols) if fast
             else ideal.containing_block(tile))
        if b is None:
            raise ParError(f"tile {tile!r} is not inside one ideal region (tiling does not refine it)")
        out.append(b)
    return out


def _mode_check(tiling: Tiling, nrows: int, ncols: int, D: Optional[Distribution]) -> Distribution:
    if (tiling.nrows, tiling.ncols) != (nrows, ncols):
        raise ParError("tiling and matrix dimensions differ")
    if D is None:
        return uniform(nrows=nrows, ncols=ncols)
    D.check_dims(nrows, ncols)
    return D


@dataclass(frozen=True)
class WorstCase:
    value: Fraction
    witness: Optional[Cell]


def _worst_objective(tiling, ideal, D, blocks=None) -> WorstCase:
    D = _mode_check(tiling, ideal.nrows, ideal.ncols, D)
    if blocks is None:
        blocks = _tile_block_ids(tiling, ideal)
    # best ratio kept as (num, den) and compared by cross-multiplication
    num, den, witness = 0, 1, None
    for tile, b in zip(tiling.tiles, blocks):
        n, d = ideal.block_size(b), tile.size
        if witness is not None and n * den <= num * d:
            continue
        if not D.is_uniform and D.mass_rect(tile.rows, tile.cols) == 0:
            continue
        num, den, witness = n, d, tile.first_cell()
    if witness is None:
        raise ParError("distribution puts no mass anywhere")
    return WorstCase(Fraction(num, den), witness)


def worst_case_objective_par(tiling: Tiling, ideal: Partition, D: Optional[Distribution] = None) -> Fraction:
    """max over inputs of |ideal region| / |protocol tile| (inputs with positive mass)."""
    return _worst_objective(tiling, ideal, D).value


def avg_objective_par(tiling: Tiling, ideal: Partition, D: Optional[Distribution] = None,
                      blocks=None) -> Fraction:
    D = _mode_check(tiling, ideal.nrows, ideal.ncols, D)
    if blocks is None:
        blocks = _tile_block_ids(tiling, ideal)
    if D.is_uniform:
        total = sum(ideal.block_size(b) for b in blocks)
        return Fraction(total, D.n_cells)
    acc = Fraction(0)
    for tile, b in zip(tiling.tiles, blocks):
        m = D.mass_rect(tile.rows, tile.cols)
        if m:
            acc += m * Fraction(ideal.block_size(b), tile.size)
    return acc


def _tile_label_ids(tiling: Tiling, table: FunctionTable) -> list[int]:
    return _tile_block_ids(tiling, ideal_partition(table))


def _slices(tiling: Tiling, table: FunctionTable, i: int, labs=None):
    """Yield ``(fixed value, slice rows, slice cols, ideal slice size)`` per i-slice."""
    if labs is None:
        labs = _tile_label_ids(tiling, table)
    if i == 1:
        counts = table._row_counts
        for tile, lab in zip(tiling.tiles, labs):
            for r in tile.rows:
                yield r, (r,), tile.cols, counts[r].get(lab, 0)
    elif i == 2:
        counts = table._col_counts
        for tile, lab in zip(tiling.tiles, labs):
            for c in tile.cols:
                yield c, tile.rows, (c,), counts[c].get(lab, 0)
    else:
        raise ParError(f"party must be 1 or 2, got {i}")


def _worst_wrt(i, tiling, table, D, labs=None) -> WorstCase:
    D = _mode_check(tiling, table.nrows, table.ncols, D)
    num, den, witness = 0, 1, None
    for _, rows, cols, ideal_size in _slices(tiling, table, i, labs):
        d = len(rows) * len(cols)
        if witness is not None and ideal_size * den <= num * d:
            continue
        if not D.is_uniform and D.mass_rect(rows, cols) == 0:
            continue
        num, den, witness = ideal_size, d, (rows[0], cols[0])
    if witness is None:
        raise ParError("distribution puts no mass anywhere")
    return WorstCase(Fraction(num, den), witness)


def worst_case_par_wrt(i: int, tiling: Tiling, table: FunctionTable,
                       D: Optional[Distribution] = None) -> Fraction:
    return _worst_wrt(i, tiling, table, D).value


def worst_case_subjective_par(tiling: Tiling, table: FunctionTable,
                              D: Optional[Distribution] = None) -> Fraction:
    return max(worst_case_par_wrt(1, tiling, table, D), worst_case_par_wrt(2, tiling, table, D))


def avg_par_wrt(i: int, tiling: Tiling, table: FunctionTable,
                D: Optional[Distribution] = None, labs=None) -> Fraction:
    D = _mode_check(tiling, table.nrows, table.ncols, D)
    if D.is_uniform:
        total = sum(s for _, _, _, s in _slices(tiling, table, i, labs))
        return Fraction(total, D.n_cells)
    acc = Fraction(0)
    for _, rows, cols, ideal_size in _slices(tiling, table, i, labs):
        m = D.mass_rect(rows, cols)
        if m:
            acc += m * Fraction(ideal_size, len(rows) * len(cols))
    return acc


def avg_subjective_par(tiling: Tiling, table: FunctionTable, D: Optional[Distribution] = None) -> Fraction:
    return max(avg_par_wrt(1, tiling, table, D), avg_par_wrt(2, tiling, table, D))


def is_perfectly_private(tiling: Tiling, table: FunctionTable, mode: str = "objective") -> bool:
    """Does the tiling (or its i-slicing) coincide with the ideal (i-ideal) partition?"""
    if mode == "subjective":
        return is_perfectly_private(tiling, table, "wrt1") and is_perfectly_private(tiling, table, "wrt2")
    if mode == "objective":
        labs = _tile_label_ids(tiling, table)
        # refining + one tile per label  <=>  same partition
        return len(set(labs)) == len(labs) == len(table.labels)
    if mode in ("wrt1", "wrt2"):
        i = int(mode[-1])
        return all(len(rows) * len(cols) == s for _, rows, cols, s in _slices(tiling, table, i))
    raise ParError(f"unknown privacy mode {mode!r}")


@dataclass
class ParReport:
    worst_objective: Fraction
    worst_wrt1: Fraction
    worst_wrt2: Fraction
    avg_objective: Fraction
    avg_wrt1: Fraction
    avg_wrt2: Fraction
    tiles: int
    witnesses: dict = field(default_factory=dict)

    @property
    def worst_subjective(self) -> Fraction:
        return max(self.worst_wrt1, self.worst_wrt2)

    @property
    def avg_subjective(self) -> Fraction:
        return max(self.avg_wrt1, self.avg_wrt2)

    VALUE_FIELDS = ("worst_objective", "worst_wrt1", "worst_wrt2", "worst_subjective",
                    "avg_objective", "avg_wrt1", "avg_wrt2", "avg_subjective")

    def value(self, name: str) -> Fraction:
        return getattr(self, name.replace("-", "_"))

    def to_json(self) -> dict:
        doc = {name: {"exact": frac_str(getattr(self, name)),
                      "decimal": frac_decimal(getattr(self, name))}
               for name in self.VALUE_FIELDS}
        doc["tiles"] = self.tiles
        doc["witnesses"] = {k: list(v) for k, v in self.witnesses.items() if v is not None}
        return doc


def par_report(tiling: Tiling, table: FunctionTable, D: Optional[Distribution] = None) -> ParReport:
    ideal = ideal_partition(table)
    labs = _tile_block_ids(tiling, ideal)
    wo = _worst_objective(tiling, ideal, D, labs)
    w1 = _worst_wrt(1, tiling, table, D, labs)
    w2 = _worst_wrt(2, tiling, table, D, labs)
    return ParReport(
        worst_objective=wo.value,
        worst_wrt1=w1.value,
        worst_wrt2=w2.value,
        avg_objective=avg_objective_par(tiling, ideal, D, labs),
        avg_wrt1=avg_par_wrt(1, tiling, table, D, labs),
        avg_wrt2=avg_par_wrt(2, tiling, table, D, labs),
        tiles=len(tiling),
        witnesses={"worst_objective": wo.witness, "worst_wrt1": w1.witness,
                   "worst_wrt2": w2.witness},
    )


# --------------------------------------------------------------------------
# generalized measures


def discrete_distance(a: Cell, b: Cell) -> int:
    return 0 if a == b else 1


def l1_distance(a: Cell, b: Cell) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def linf_distance(a: Cell, b: Cell) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def x1_distance(a: Cell, b: Cell) -> int:
    return abs(a[0] - b[0])


def x2_distance(a: Cell, b: Cell) -> int:
    return abs(a[1] - b[1])


DISTANCES: dict[str, Callable[[Cell, Cell], int]] = {
    "discrete": discrete_distance,
    "l1": l1_distance,
    "linf": linf_distance,
    "x1": x1_distance,
    "x2": x2_distance,
}


@dataclass(frozen=True)
class Measure:
    """``g(R, x)``: how much cover the cell set R gives the input x.

    ``per_region`` marks measures that ignore x, so one evaluation per region
    suffices.
    """

    name: str
    fn: Callable[[frozenset, Cell], Fraction]
    per_region: bool = False

    def __call__(self, region, x: Cell) -> Fraction:
        cells = region if isinstance(region, frozenset) else region.cell_set()
        return self.fn(cells, x)


def cardinality() -> Measure:
    return Measure("cardinality", lambda cells, x: Fraction(len(cells)), per_region=True)


def probability_mass(D: Distribution) -> Measure:
    return Measure("probability_mass", lambda cells, x: D.mass_cells(cells), per_region=True)


def additive_distance(d: Callable = discrete_distance) -> Measure:
    def g(cells, x):
        return 1 + sum((Fraction(d(x, y)) for y in cells if y != x), Fraction(0))
    return Measure("additive_distance", g)


def max_distance(d: Callable = discrete_distance) -> Measure:
    # empty max (x alone in R) counts as 0, so a singleton gets 1
    def g(cells, x):
        return 1 + max((Fraction(d(y, x)) for y in cells if y != x), default=Fraction(0))
    return Measure("max_distance", g)


def plausible_deniability(D: Distribution, d: Callable, t) -> Measure:
    """1 + the farthest distance d0 such that mass at distance >= d0 is a t-share of R."""
    t = _frac(t)
    if not 0 < t <= 1:
        raise ParError("plausibility threshold must lie in (0, 1]")

    def g(cells, x):
        total = D.mass_cells(cells)
        if total == 0:
            raise ZeroDivisionError("plausible deniability of a zero-mass region")
        by_dist: dict = {}
        for y in cells:
            dist = Fraction(d(y, x))
            by_dist[dist] = by_dist.get(dist, Fraction(0)) + D.mass(y)
        best = Fraction(0)
        tail = Fraction(0)
        for dist in sorted(by_dist, reverse=True):
            tail += by_dist[dist]
            if tail >= t * total:
                best = dist
                break
        return 1 + best
    return Measure("plausible_deniability", g)


def default_size(x: Cell) -> int:
    return 1 + max(x)


def relative_diameter(d: Callable = discrete_distance, size_fn: Callable[[Cell], int] = default_size) -> Measure:
    """``(1 + diam_d(R)) / size_fn(x)``; the +1 keeps singletons and x = 0 finite."""
    cache: dict = {}

    def diameter(cells: frozenset) -> Fraction:
        got = cache.get(cells)
        if got is None:
            pts = list(cells)
            got = max((Fraction(d(a, b)) for i, a in enumerate(pts) for b in pts[i + 1:]),
                      default=Fraction(0))
            cache[cells] = got
        return got

    return Measure("relative_diameter", lambda cells, x: (1 + diameter(cells)) / Fraction(size_fn(x)))


@dataclass
class GeneralizedPar:
    value: Optional[Fraction]
    witness: Optional[Cell] = None
    undefined: bool = False
    zero_over_zero: int = 0

    def to_json(self) -> dict:
        return {"value": None if self.value is None else frac_str(self.value),
                "decimal": None if self.value is None else frac_decimal(self.value),
                "undefined": self.undefined, "zero_over_zero": self.zero_over_zero,
                "witness": None if self.witness is None else list(self.witness)}


def _ideal_cells(ideal: Partition, block_id: int) -> frozenset:
    if isinstance(ideal, IdealPartition):
        pts = np.argwhere(ideal.table.ids == block_id)
        return frozenset((int(r), int(c)) for r, c in pts)
    return ideal.block_cells(block_id)


def generalized_par(tiling: Tiling, ideal: Partition, measure: Measure, mode: str = "avg",
                    D: Optional[Distribution] = None, view: str = "objective") -> GeneralizedPar:
    """PAR with ``measure`` in place of cardinality.

    ``mode`` is ``worst`` (max over cells with positive mass) or ``avg``
    (expectation under D).  ``view`` is ``objective``, ``wrt1`` or ``wrt2``; in
    the latter two both regions are first sliced by that party's value.  A
    0/0 ratio counts as 1 and is tallied; x/0 makes the result undefined.
    """
    if mode not in ("worst", "avg"):
        raise ParError(f"mode must be worst or avg, got {mode!r}")
    if view not in ("objective", "wrt1", "wrt2"):
        raise ParError(f"unknown view {view!r}")
    D = _mode_check(tiling, ideal.nrows, ideal.ncols, D)
    blocks = _tile_block_ids(tiling, ideal)
    ideal_cells: dict = {}
    cache: dict = {}

    def g(key, cells, x):
        if measure.per_region:
            got = cache.get(key)
            if got is None:
                got = cache[key] = measure.fn(cells, x)
            return got
        return measure.fn(cells, x)

    result = GeneralizedPar(value=Fraction(0) if mode == "avg" else None)
    for n, (tile, b) in enumerate(zip(tiling.tiles, blocks)):
        if b not in ideal_cells:
            ideal_cells[b] = _ideal_cells(ideal, b)
        region = ideal_cells[b]
        tile_cells = tile.cell_set()
        for x in tile.cells():
            w = D.mass(x)
            if w == 0:
                continue
            if view == "objective":
                num_key, num_cells = ("I", b), region
                den_key, den_cells = ("P", n), tile_cells
            else:
                axis = 0 if view == "wrt1" else 1
                num_key = ("I", b, x[axis])
                den_key = ("P", n, x[axis])
                num_cells = frozenset(y for y in region if y[axis] == x[axis])
                den_cells = frozenset(y for y in tile_cells if y[axis] == x[axis])
            try:
                num = g(num_key, num_cells, x)
                den = g(den_key, den_cells, x)
            except ZeroDivisionError:
                return GeneralizedPar(None, witness=x, undefined=True)
            if den == 0:
                if num != 0:
                    return GeneralizedPar(None, witness=x, undefined=True)
                ratio = Fraction(1)
                result.zero_over_zero += 1
            else:
                ratio = Fraction(num) / den
            if mode == "avg":
                result.value += w * ratio
            elif result.value is None or ratio > result.value:
                result.value, result.witness = ratio, x
    return result


def measure_from_name(name: str, D: Optional[Distribution] = None, distance: str = "discrete",
                      threshold=None) -> Measure:
    if distance not in DISTANCES:
        raise ParError(f"unknown distance {distance!r}; choose from {sorted(DISTANCES)}")
    d = DISTANCES[distance]
    if name == "cardinality":
        return cardinality()
    if name in ("probability-mass", "probability_mass", "mass"):
        if D is None:
            raise ParError("probability-mass measure needs a distribution")
        return probability_mass(D)
    if name in ("additive-distance", "additive_distance", "additive"):
        return additive_distance(d)
    if name in ("max-distance", "max_distance", "max"):
        return max_distance(d)
    if name in ("plausible-deniability", "plausible_deniability", "deniability"):
        if D is None or threshold is None:
            raise ParError("plausible-deniability needs a distribution and --threshold")
        return plausible_deniability(D, d, threshold)
    if name in ("relative-diameter", "relative_diameter", "diameter"):
        return relative_diameter(d)
    raise ParError(f"unknown measure {name!r}")


def dumps_distribution(D: Distribution) -> str:
    return json.dumps(D.to_json())
