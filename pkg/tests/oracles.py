"""Brute-force reference computations, written straight from the definitions.

Nothing here touches the tiling or PAR code: tiles are recovered as the
fibers of the transcript map (cells with equal transcripts), ideal regions
as the fibers of the output, and every ratio is taken cell by cell.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from parlab.protocols import run


def output_grid(f, nrows, ncols):
    return {(x1, x2): f(x1, x2) for x1 in range(nrows) for x2 in range(ncols)}


def transcripts(p):
    return {(x1, x2): run(p, x1, x2).bits for x1 in range(p.nrows) for x2 in range(p.ncols)}


def fibers(mapping):
    groups = defaultdict(set)
    for cell, key in mapping.items():
        groups[key].add(cell)
    return {cell: frozenset(groups[key]) for cell, key in mapping.items()}


def brute_pars(f, p, mass=None):
    """All eight PARs of protocol ``p`` for function ``f``, cell by cell.

    ``mass`` maps cells to probabilities (uniform if omitted).
    """
    out = output_grid(f, p.nrows, p.ncols)
    ideal = fibers(out)
    tile = fibers(transcripts(p))
    n = p.nrows * p.ncols
    if mass is None:
        mass = {c: Fraction(1, n) for c in out}
    ratios = {"objective": {}, "wrt1": {}, "wrt2": {}}
    for x in out:
        ratios["objective"][x] = Fraction(len(ideal[x]), len(tile[x]))
        for axis, name in ((0, "wrt1"), (1, "wrt2")):
            num = sum(1 for y in ideal[x] if y[axis] == x[axis])
            den = sum(1 for y in tile[x] if y[axis] == x[axis])
            ratios[name][x] = Fraction(num, den)
    res = {}
    for name, r in ratios.items():
        res["worst_" + name] = max(v for x, v in r.items() if mass[x] > 0)
        res["avg_" + name] = sum(mass[x] * v for x, v in r.items())
    res["worst_subjective"] = max(res["worst_wrt1"], res["worst_wrt2"])
    res["avg_subjective"] = max(res["avg_wrt1"], res["avg_wrt2"])
    res["tiles"] = len(set(tile.values()))
    return res


def brute_ideal_sizes(f, nrows, ncols):
    out = output_grid(f, nrows, ncols)
    counts = defaultdict(int)
    for v in out.values():
        counts[v] += 1
    return {c: counts[v] for c, v in out.items()}


def brute_max_bits(p):
    return max(len(b) for b in transcripts(p).values())


def brute_mass_par(tiles, regions, mass):
    """Average PAR with g(R) = Pr(R), given explicit tile and region cell lists."""
    tile_of = {c: t for t in tiles for c in t}
    region_of = {c: r for r in regions for c in r}
    total = Fraction(0)
    for x, w in mass.items():
        if w == 0:
            continue
        num = sum(mass[y] for y in region_of[x])
        den = sum(mass[y] for y in tile_of[x])
        total += w * num / den
    return total
