"""Function matrices, regions, rectangles, partitions and tilings.

A :class:`FunctionTable` stores the outcome matrix of a two-party function
as an integer array of label ids (rows are party 1's values, columns are
party 2's).  Rectangles keep their row and column index sets and only
expand to cells on demand, so large tiles stay cheap.
"""

from __future__ import annotations

import json
import os
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .problems import ProblemError, ProblemSpec

Cell = tuple[int, int]

DEFAULT_KCAP = 12


def kcap_from_env() -> int:
    raw = os.environ.get("PARLAB_KCAP")
    if raw is None:
        return DEFAULT_KCAP
    try:
        return int(raw)
    except ValueError:
        raise ProblemError(f"PARLAB_KCAP must be an integer, got {raw!r}") from None


# --------------------------------------------------------------------------
# labels


def encode_label(label) -> str:
    """Lossless tagged-string form of an output label."""
    if isinstance(label, bool):
        raise TypeError("boolean labels are not supported")
    if isinstance(label, int):
        return f"int:{label}"
    if isinstance(label, str):
        return f"str:{label}"
    if isinstance(label, tuple):
        return "tuple:" + json.dumps([encode_label(part) for part in label])
    raise TypeError(f"cannot encode label {label!r}")


def decode_label(text: str):
    tag, sep, payload = text.partition(":")
    if not sep:
        raise ValueError(f"untagged label {text!r}")
    if tag == "int":
        return int(payload)
    if tag == "str":
        return payload
    if tag == "tuple":
        return tuple(decode_label(part) for part in json.loads(payload))
    raise ValueError(f"unknown label tag {tag!r}")


# --------------------------------------------------------------------------
# the outcome matrix


class FunctionTable:
    """Outcome matrix A(f): ``ids[x1, x2]`` indexes into ``labels``."""

    def __init__(self, ids: np.ndarray, labels: Sequence, k: Optional[int] = None,
                 problem: Optional[ProblemSpec] = None):
        if ids.ndim != 2 or ids.size == 0:
            raise ValueError("table must be a nonempty 2-d array")
        self.ids = ids
        self.ids.setflags(write=False)
        self.labels = list(labels)
        self._label_ids = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._label_ids) != len(self.labels):
            raise ValueError("duplicate labels")
        self.k = k
        self.problem = problem

    @classmethod
    def from_function(cls, f: Callable[[int, int], object], nrows: int, ncols: int,
                      k: Optional[int] = None, problem: Optional[ProblemSpec] = None):
        label_ids: dict = {}
        ids = np.empty((nrows, ncols), dtype=np.int32)
        for x1 in range(nrows):
            row = ids[x1]
            for x2 in range(ncols):
                lab = f(x1, x2)
                idx = label_ids.get(lab)
                if idx is None:
                    idx = label_ids[lab] = len(label_ids)
                row[x2] = idx
        labels = sorted(label_ids, key=label_ids.__getitem__)
        return cls(ids, labels, k=k, problem=problem)

    @property
    def nrows(self) -> int:
        return self.ids.shape[0]

    @property
    def ncols(self) -> int:
        return self.ids.shape[1]

    @property
    def n_cells(self) -> int:
        return self.ids.size

    def label(self, x1: int, x2: int):
        if not (0 <= x1 < self.nrows and 0 <= x2 < self.ncols):
            raise IndexError(f"cell {(x1, x2)} outside {self.nrows}x{self.ncols} table")
        return self.labels[self.ids[x1, x2]]

    def label_id(self, label) -> int:
        try:
            return self._label_ids[label]
        except KeyError:
            raise KeyError(f"label {label!r} does not occur in the table") from None

    def has_label(self, label) -> bool:
        return label in self._label_ids

    @cached_property
    def label_counts(self) -> np.ndarray:
        """Number of cells carrying each label id (the ideal region sizes)."""
        return np.bincount(self.ids.ravel(), minlength=len(self.labels))

    @cached_property
    def _row_counts(self) -> list[dict[int, int]]:
        return [_counts(self.ids[r]) for r in range(self.nrows)]

    @cached_property
    def _col_counts(self) -> list[dict[int, int]]:
        return [_counts(self.ids[:, c]) for c in range(self.ncols)]

    def row_label_count(self, x1: int, label_id: int) -> int:
        """Cells in row ``x1`` with the given label: the 1-ideal rectangle size."""
        return self._row_counts[x1].get(label_id, 0)

    def col_label_count(self, x2: int, label_id: int) -> int:
        """Cells in column ``x2`` with the given label: the 2-ideal rectangle size."""
        return self._col_counts[x2].get(label_id, 0)

    def block(self, rows, cols) -> np.ndarray:
        """Label ids over ``rows x cols`` (a view when both are ranges)."""
        if isinstance(rows, range) and isinstance(cols, range) and rows.step == 1 and cols.step == 1:
            return self.ids[rows.start:rows.stop, cols.start:cols.stop]
        return self.ids[np.ix_(np.fromiter(rows, dtype=np.intp),
                               np.fromiter(cols, dtype=np.intp))]

    def uniform_label_id(self, rows, cols) -> Optional[int]:
        """The single label id on ``rows x cols``, or None when it has several."""
        if len(rows) == 1 and len(cols) == 1:
            return int(self.ids[next(iter(rows)), next(iter(cols))])
        sub = self.block(rows, cols)
        first = sub.flat[0]
        if np.all(sub == first):
            return int(first)
        return None

    def cells(self) -> Iterator[Cell]:
        for x1 in range(self.nrows):
            for x2 in range(self.ncols):
                yield (x1, x2)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "nrows": self.nrows,
            "ncols": self.ncols,
            "problem": None if self.problem is None else str(self.problem),
            "labels": [encode_label(lab) for lab in self.labels],
            "ids": self.ids.tolist(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FunctionTable":
        labels = [decode_label(s) for s in doc["labels"]]
        ids = np.asarray(doc["ids"], dtype=np.int32)
        problem = ProblemSpec.parse(doc["problem"]) if doc.get("problem") else None
        return cls(ids, labels, k=doc.get("k"), problem=problem)

    def __repr__(self) -> str:
        return f"FunctionTable({self.problem}, {self.nrows}x{self.ncols}, {len(self.labels)} labels)"


def _counts(arr: np.ndarray) -> dict[int, int]:
    vals, cnts = np.unique(arr, return_counts=True)
    return dict(zip(vals.tolist(), cnts.tolist()))


_TABLE_CACHE: dict = {}


def build_table(problem: Union[ProblemSpec, str], k: int, kcap: Optional[int] = None) -> FunctionTable:
    """Materialize the ``2^k x 2^k`` outcome matrix of ``problem``.

    Tables are cached per ``(problem, k)``; they are immutable.
    """
    if isinstance(problem, str):
        problem = ProblemSpec.parse(problem)
    cap = kcap_from_env() if kcap is None else kcap
    if k < 1:
        raise ProblemError(f"k must be >= 1, got {k}")
    if k > cap:
        raise ProblemError(f"k={k} exceeds the table cap {cap} (set PARLAB_KCAP to raise it)")
    key = (problem, k)
    table = _TABLE_CACHE.get(key)
    if table is None:
        f = problem.output_function(k)
        size = 1 << k
        table = FunctionTable.from_function(f, size, size, k=k, problem=problem)
        _TABLE_CACHE[key] = table
    return table


# --------------------------------------------------------------------------
# regions and rectangles


def _norm(values) -> tuple[int, ...]:
    if isinstance(values, range) and values.step == 1:
        return tuple(values)
    return tuple(sorted(set(values)))


class Rect:
    """The submatrix ``rows x cols``; index sets need not be contiguous."""

    __slots__ = ("rows", "cols")

    def __init__(self, rows, cols):
        self.rows = _norm(rows)
        self.cols = _norm(cols)
        if not self.rows or not self.cols:
            raise ValueError("rectangle needs nonempty rows and cols")

    @classmethod
    def _make(cls, rows: tuple, cols: tuple) -> "Rect":
        # trusted constructor: sorted, duplicate-free, nonempty tuples
        self = object.__new__(cls)
        self.rows = rows
        self.cols = cols
        return self

    @property
    def size(self) -> int:
        return len(self.rows) * len(self.cols)

    def cells(self) -> Iterator[Cell]:
        for r in self.rows:
            for c in self.cols:
                yield (r, c)

    def cell_set(self) -> frozenset:
        return frozenset(self.cells())

    def first_cell(self) -> Cell:
        return (self.rows[0], self.cols[0])

    def __contains__(self, cell) -> bool:
        r, c = cell
        return r in self._rowset and c in self._colset

    @property
    def _rowset(self):
        return frozenset(self.rows)

    @property
    def _colset(self):
        return frozenset(self.cols)

    def __eq__(self, other):
        return isinstance(other, Rect) and self.rows == other.rows and self.cols == other.cols

    def __hash__(self):
        return hash((self.rows, self.cols))

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"Rect(rows={_short(self.rows)}, cols={_short(self.cols)})"

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


def _short(vals: tuple) -> str:
    if len(vals) > 2 and vals[-1] - vals[0] + 1 == len(vals):
        return f"{vals[0]}..{vals[-1]}"
    return "{" + ",".join(map(str, vals)) + "}"


class Region:
    """An arbitrary nonempty set of cells."""

    __slots__ = ("cells",)

    def __init__(self, cells: Iterable[Cell]):
        self.cells = frozenset((int(r), int(c)) for r, c in cells)
        if not self.cells:
            raise ValueError("region must be nonempty")

    @property
    def size(self) -> int:
        return len(self.cells)

    def cell_set(self) -> frozenset:
        return self.cells

    def first_cell(self) -> Cell:
        return min(self.cells)

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self.cells

    def __iter__(self):
        return iter(sorted(self.cells))

    def __len__(self):
        return len(self.cells)

    def __eq__(self, other):
        return isinstance(other, Region) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return f"Region({len(self.cells)} cells)"

    def to_json(self) -> dict:
        return {"cells": [list(c) for c in sorted(self.cells)]}


Block = Union[Rect, Region]


def _block_cells(block) -> Iterable[Cell]:
    if isinstance(block, Rect):
        return block.cells()
    if isinstance(block, Region):
        return block.cells
    return block


def _gather(arr: np.ndarray, block) -> np.ndarray:
    """Values of a 2-d array over the cells of ``block``."""
    if isinstance(block, Rect):
        return arr[np.ix_(block.rows, block.cols)].ravel()
    cells = list(_block_cells(block))
    if not cells:
        return arr[:0, 0]
    r, c = zip(*cells)
    return arr[list(r), list(c)]


# --------------------------------------------------------------------------
# partitions and tilings


class Partition:
    """Disjoint blocks (regions or rectangles) covering an ``nrows x ncols`` matrix.

    ``index`` maps every cell to its block number; it is built once and
    reused by the many lookups PAR computations make.
    """

    def __init__(self, blocks: Sequence[Block], nrows: int, ncols: int):
        self._blocks = list(blocks)
        self.nrows = nrows
        self.ncols = ncols

    @property
    def blocks(self) -> list:
        return self._blocks

    @property
    def regions(self) -> list:
        return self.blocks

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    @cached_property
    def index(self) -> np.ndarray:
        idx = np.full((self.nrows, self.ncols), -1, dtype=np.int64)
        for b, block in enumerate(self.blocks):
            for r, c in _block_cells(block):
                if idx[r, c] != -1:
                    raise ValueError(f"cell {(r, c)} lies in two blocks")
                idx[r, c] = b
        if (idx == -1).any():
            missing = tuple(int(v) for v in np.argwhere(idx == -1)[0])
            raise ValueError(f"cell {missing} is not covered")
        return idx

    def block_id(self, cell: Cell) -> int:
        return int(self.index[cell])

    def block_of(self, cell: Cell):
        return self.blocks[self.block_id(cell)]

    def block_size(self, block_id: int) -> int:
        return self.blocks[block_id].size

    def block_cells(self, block_id: int) -> frozenset:
        return self.blocks[block_id].cell_set()

    def containing_block(self, fine) -> Optional[int]:
        """Id of the block containing every cell of ``fine``, or None."""
        ids = _gather(self.index, fine)
        first = ids[0]
        return int(first) if np.all(ids == first) else None

    def cell_families(self) -> frozenset:
        return frozenset(b.cell_set() for b in self.blocks)

    def to_json(self) -> dict:
        return {"nrows": self.nrows, "ncols": self.ncols,
                "regions": [b.to_json() for b in self.blocks]}


class IdealPartition(Partition):
    """The ideal monochromatic partition, backed by the table's label ids.

    Block ``i`` is the set of cells carrying ``table.labels[i]``; regions are
    only materialized when someone asks for them.
    """

    def __init__(self, table: FunctionTable):
        self.table = table
        self.nrows = table.nrows
        self.ncols = table.ncols

    @cached_property
    def _blocks(self) -> list:
        groups: dict[int, list] = {}
        for (r, c), v in np.ndenumerate(self.table.ids):
            groups.setdefault(int(v), []).append((r, c))
        return [Region(groups[i]) for i in range(len(self.table.labels))]

    @property
    def index(self) -> np.ndarray:
        return self.table.ids

    def block_size(self, block_id: int) -> int:
        return int(self.table.label_counts[block_id])

    def __len__(self):
        return len(self.table.labels)


class Tiling:
    """Disjoint rectangles covering the matrix, optionally with one label per tile."""

    def __init__(self, tiles: Sequence[Rect], nrows: int, ncols: int,
                 labels: Optional[Sequence] = None):
        self.tiles = list(tiles)
        self.nrows = nrows
        self.ncols = ncols
        if labels is not None and len(labels) != len(self.tiles):
            raise ValueError("one label per tile required")
        self.labels = None if labels is None else list(labels)

    def __len__(self):
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    @property
    def blocks(self) -> list:
        return self.tiles

    def as_partition(self) -> Partition:
        return Partition(self.tiles, self.nrows, self.ncols)

    def cell_families(self) -> frozenset:
        return frozenset(t.cell_set() for t in self.tiles)

    def to_json(self, k: Optional[int] = None) -> dict:
        doc: dict = {}
        if k is not None:
            doc["k"] = k
        doc["nrows"] = self.nrows
        doc["ncols"] = self.ncols
        tiles = []
        for i, t in enumerate(self.tiles):
            entry = t.to_json()
            if self.labels is not None:
                entry["label"] = encode_label(self.labels[i])
            tiles.append(entry)
        doc["tiles"] = tiles
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Tiling":
        raw = doc.get("tiles")
        if not isinstance(raw, list) or not raw:
            raise ValueError("tiling file needs a nonempty 'tiles' list")
        tiles, labels = [], []
        for entry in raw:
            try:
                tiles.append(Rect(entry["rows"], entry["cols"]))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"malformed tile {entry!r}") from exc
            labels.append(decode_label(entry["label"]) if "label" in entry else None)
        if "nrows" in doc and "ncols" in doc:
            nrows, ncols = int(doc["nrows"]), int(doc["ncols"])
        elif doc.get("k") is not None:
            nrows = ncols = 1 << int(doc["k"])
        else:
            nrows = 1 + max(t.rows[-1] for t in tiles)
            ncols = 1 + max(t.cols[-1] for t in tiles)
        has_labels = all(lab is not None for lab in labels)
        return cls(tiles, nrows, ncols, labels if has_labels else None)


# --------------------------------------------------------------------------
# operations


def ideal_partition(table: FunctionTable) -> IdealPartition:
    return IdealPartition(table)


def i_partition(region, i: int) -> list[Rect]:
    """Slice ``region`` by fixed values of party ``i``.

    For ``i == 1`` each slice is ``{x1} x {x2 : (x1, x2) in region}``.
    """
    if i not in (1, 2):
        raise ValueError(f"party must be 1 or 2, got {i}")
    if isinstance(region, Rect):
        if i == 1:
            return [Rect((r,), region.cols) for r in region.rows]
        return [Rect(region.rows, (c,)) for c in region.cols]
    slices: dict[int, list] = {}
    for r, c in _block_cells(region):
        if i == 1:
            slices.setdefault(r, []).append(c)
        else:
            slices.setdefault(c, []).append(r)
    if i == 1:
        return [Rect((r,), cols) for r, cols in sorted(slices.items())]
    return [Rect(rows, (c,)) for c, rows in sorted(slices.items())]


def i_ideal_partition(table: FunctionTable, i: int) -> Partition:
    """The ideal partition with every region sliced by party ``i``'s value."""
    if i not in (1, 2):
        raise ValueError(f"party must be 1 or 2, got {i}")
    groups: dict[tuple[int, int], list[int]] = {}
    ids = table.ids
    for x1 in range(table.nrows):
        row = ids[x1].tolist()
        for x2, lab in enumerate(row):
            key = (x1, lab) if i == 1 else (x2, lab)
            groups.setdefault(key, []).append(x2 if i == 1 else x1)
    rects = []
    for (fixed, _), others in sorted(groups.items()):
        rects.append(Rect((fixed,), others) if i == 1 else Rect(others, (fixed,)))
    return Partition(rects, table.nrows, table.ncols)


def i_induced_tiling(tiling: Tiling, i: int) -> Tiling:
    tiles, labels = [], []
    for n, tile in enumerate(tiling.tiles):
        for piece in i_partition(tile, i):
            tiles.append(piece)
            if tiling.labels is not None:
                labels.append(tiling.labels[n])
    return Tiling(tiles, tiling.nrows, tiling.ncols, labels if tiling.labels is not None else None)


def is_monochromatic(region, table: FunctionTable) -> bool:
    if isinstance(region, Rect):
        return table.uniform_label_id(region.rows, region.cols) is not None
    vals = _gather(table.ids, region)
    return bool(vals.size) and bool(np.all(vals == vals[0]))


def _cover_counts(blocks, nrows: int, ncols: int) -> Optional[np.ndarray]:
    counts = np.zeros((nrows, ncols), dtype=np.int64)
    for block in blocks:
        if isinstance(block, Rect):
            if block.rows[-1] >= nrows or block.cols[-1] >= ncols or block.rows[0] < 0 or block.cols[0] < 0:
                return None
            counts[np.ix_(block.rows, block.cols)] += 1
        else:
            for r, c in _block_cells(block):
                if not (0 <= r < nrows and 0 <= c < ncols):
                    return None
                counts[r, c] += 1
    return counts


def is_partition(candidate: Sequence, table: FunctionTable) -> bool:
    """Disjoint and covering, for any mix of regions and rectangles."""
    counts = _cover_counts(candidate, table.nrows, table.ncols)
    return counts is not None and bool(np.all(counts == 1))


def is_tiling(candidate: Sequence, table: FunctionTable) -> bool:
    if not all(isinstance(b, Rect) for b in candidate):
        return False
    return is_partition(candidate, table)


def refines(fine, coarse: Partition) -> bool:
    """True iff every block of ``fine`` sits inside a single block of ``coarse``."""
    blocks = fine.blocks if hasattr(fine, "blocks") else list(fine)
    return all(coarse.containing_block(b) is not None for b in blocks)
