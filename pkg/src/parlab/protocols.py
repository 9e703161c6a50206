"""Deterministic two-party protocols as decision trees.

An internal node names the speaker and splits that speaker's current
candidate set into ``branch0`` / ``branch1``; the bit sent is the branch
holding the speaker's value.  Leaves carry the output.  Built-in protocols
grow their trees lazily: a node's children are computed on first access
and then kept, so a tree is never larger than what has been explored.

Value sets are ``range`` objects where contiguous (the common case) and
frozensets otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Callable, Iterator, Optional, Sequence, Union

import numpy as np

from .problems import (
    ProblemSpec,
    appendix_a_output,
    truthful_public_good_output,
    BUILD,
    DO_NOT_BUILD,
)
from .tiling import FunctionTable, Rect, Tiling, decode_label, encode_label

ValueSet = Union[range, frozenset]


class ProtocolError(ValueError):
    pass


class Leaf:
    __slots__ = ("output",)

    def __init__(self, output):
        self.output = output

    def __repr__(self):
        return f"Leaf({self.output!r})"


class Split:
    __slots__ = ("speaker", "branch0", "branch1", "_children", "_thunk")

    def __init__(self, speaker: int, branch0, branch1, child0=None, child1=None, thunk=None):
        if speaker not in (1, 2):
            raise ProtocolError(f"speaker must be 1 or 2, got {speaker}")
        self.speaker = speaker
        self.branch0 = branch0 if type(branch0) is range else _as_valueset(branch0)
        self.branch1 = branch1 if type(branch1) is range else _as_valueset(branch1)
        self._children = [child0, child1]
        self._thunk = thunk

    def child(self, bit: int):
        node = self._children[bit]
        if node is None:
            if self._thunk is None:
                raise ProtocolError("split node without child")
            expand, s0, s1 = self._thunk
            node = _grow(expand, s0 if bit == 0 else s1)
            self._children[bit] = node
            if self._children[1 - bit] is not None:
                self._thunk = None
        return node

    def __repr__(self):
        return f"Split(speaker={self.speaker}, |b0|={len(self.branch0)}, |b1|={len(self.branch1)})"


Node = Union[Leaf, Split]


def _as_valueset(values) -> ValueSet:
    if isinstance(values, range):
        if values.step != 1:
            return frozenset(values)
        return values
    vals = frozenset(int(v) for v in values)
    if vals and max(vals) - min(vals) + 1 == len(vals):
        return range(min(vals), max(vals) + 1)
    return vals


_FORK = object()


def _Fork(speaker, branch0, branch1, state0, state1):
    return (_FORK, speaker, branch0, branch1, state0, state1)


def _grow(expand: Callable, state) -> Node:
    # expand(state) yields a Leaf, a fork, or another state to expand in place
    while True:
        if type(state) is Leaf or type(state) is Split:
            return state
        res = expand(state)
        if type(res) is tuple and res[0] is _FORK:
            _, speaker, b0, b1, s0, s1 = res
            return Split(speaker, b0, b1, thunk=(expand, s0, s1))
        state = res


@dataclass
class Protocol:
    nrows: int
    ncols: int
    root: Node
    name: str = "custom"
    params: dict = field(default_factory=dict)
    k: Optional[int] = None

    def __repr__(self):
        extra = ", ".join(f"{a}={b}" for a, b in self.params.items())
        return f"Protocol({self.name}{'(' + extra + ')' if extra else ''}, {self.nrows}x{self.ncols})"


@dataclass(frozen=True)
class Transcript:
    bits: tuple
    output: object

    def __len__(self):
        return len(self.bits)


# --------------------------------------------------------------------------
# execution


def run(p: Protocol, x1: int, x2: int) -> Transcript:
    if not (0 <= x1 < p.nrows and 0 <= x2 < p.ncols):
        raise ProtocolError(f"input {(x1, x2)} out of range")
    node = p.root
    bits = []
    while isinstance(node, Split):
        v = x1 if node.speaker == 1 else x2
        if v in node.branch0:
            bit = 0
        elif v in node.branch1:
            bit = 1
        else:
            raise ProtocolError(f"value {v} of party {node.speaker} not covered after bits {bits}")
        bits.append(bit)
        node = node.child(bit)
    return Transcript(tuple(bits), node.output)


def iter_leaves(p: Protocol) -> Iterator[tuple]:
    """Yield ``(rows, cols, output, depth)`` for every leaf, depth-first.

    Subtrees nobody has expanded yet are walked straight from their growth
    states without materializing nodes, which keeps full sweeps of very large
    trees (sealed bid at k=10) affordable.
    """
    for rows, cols, out, depth, _ in _walk(p):
        yield rows, cols, out, depth


def _walk(p: Protocol, on_split: Optional[Callable] = None):
    """Leaves as ``(rows, cols, output, depth, link)``; ``link`` encodes the path.

    ``on_split(speaker, b0, b1, rows, cols, link)`` sees every internal node
    before its children; a truthy return value stops the walk and is yielded
    as ``(None, None, value, depth, link)``.
    """
    stack = [(p.root, range(p.nrows), range(p.ncols), 0, None, None)]
    while stack:
        node, rows, cols, depth, expand, link = stack.pop()
        if expand is not None:
            while True:
                if type(node) is Leaf or type(node) is Split:
                    break
                res = expand(node)
                if type(res) is tuple and res[0] is _FORK:
                    _, speaker, b0, b1, s0, s1 = res
                    if on_split is not None:
                        err = on_split(speaker, b0, b1, rows, cols, link)
                        if err:
                            yield None, None, err, depth, link
                            return
                    if speaker == 1:
                        stack.append((s1, b1, cols, depth + 1, expand, (link, 1)))
                        stack.append((s0, b0, cols, depth + 1, expand, (link, 0)))
                    else:
                        stack.append((s1, rows, b1, depth + 1, expand, (link, 1)))
                        stack.append((s0, rows, b0, depth + 1, expand, (link, 0)))
                    node = None
                    break
                node = res
            if node is None:
                continue
        if type(node) is Leaf:
            yield rows, cols, node.output, depth, link
            continue
        if on_split is not None:
            err = on_split(node.speaker, node.branch0, node.branch1, rows, cols, link)
            if err:
                yield None, None, err, depth, link
                return
        thunk = node._thunk
        if thunk is not None and node._children[0] is None and node._children[1] is None:
            expand, s0, s1 = thunk
            c0, c1 = s0, s1
        else:
            expand, c0, c1 = None, node.child(0), node.child(1)
        if node.speaker == 1:
            stack.append((c1, node.branch1, cols, depth + 1, expand, (link, 1)))
            stack.append((c0, node.branch0, cols, depth + 1, expand, (link, 0)))
        else:
            stack.append((c1, rows, node.branch1, depth + 1, expand, (link, 1)))
            stack.append((c0, rows, node.branch0, depth + 1, expand, (link, 0)))


def induced_tiling(p: Protocol, table: Optional[FunctionTable] = None) -> Tiling:
    """One tile per leaf: the rows and columns still alive when it is reached.

    With a table, every tile is checked to be monochromatic with the leaf's
    label; a failure means the protocol does not compute the function.
    """
    return tiling_and_depth(p, table)[0]


def tiling_and_depth(p: Protocol, table: Optional[FunctionTable] = None) -> tuple[Tiling, int]:
    """``induced_tiling`` plus the communication complexity, in one sweep."""
    tiles, labels = [], []
    max_depth = 0
    tuples: dict = {}
    want_ids: dict = {}
    ids = None if table is None else table.ids

    def as_tuple(vals):
        key = (vals.start, vals.stop) if type(vals) is range else vals
        t = tuples.get(key)
        if t is None:
            t = tuples[key] = tuple(sorted(vals))
        return t

    for rows, cols, out, depth in iter_leaves(p):
        if depth > max_depth:
            max_depth = depth
        if table is not None:
            want = want_ids.get(out)
            if want is None:
                if not table.has_label(out):
                    raise ProtocolError(f"leaf output {out!r} never occurs in the table")
                want = want_ids[out] = table.label_id(out)
            if len(rows) == 1 and len(cols) == 1:
                got = ids[rows[0] if type(rows) is range else next(iter(rows)),
                          cols[0] if type(cols) is range else next(iter(cols))]
            else:
                got = table.uniform_label_id(rows, cols)
            if got != want:
                bad = _first_bad_cell(table, rows, cols, out)
                raise ProtocolError(
                    f"leaf {Rect(rows, cols)!r} outputs {out!r} but cell {bad} has "
                    f"{table.label(*bad)!r}")
        tiles.append(Rect._make(as_tuple(rows), as_tuple(cols)))
        labels.append(out)
    return Tiling(tiles, p.nrows, p.ncols, labels), max_depth


def _first_bad_cell(table: FunctionTable, rows, cols, out):
    want = table.label_id(out) if table.has_label(out) else -1
    rows, cols = list(rows), list(cols)
    sub = table.block(rows, cols)
    r, c = np.argwhere(sub != want)[0]
    return (rows[int(r)], cols[int(c)])


@dataclass
class ValidationReport:
    ok: bool
    errors: list = field(default_factory=list)
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def _covers(b0: ValueSet, b1: ValueSet, current: ValueSet) -> bool:
    if isinstance(b0, range) and isinstance(b1, range) and isinstance(current, range):
        lo, hi = (b0, b1) if b0.start <= b1.start else (b1, b0)
        return lo.start == current.start and lo.stop == hi.start and hi.stop == current.stop
    s0, s1 = set(b0), set(b1)
    return not (s0 & s1) and (s0 | s1) == set(current)


def _path_bits(link) -> str:
    bits = []
    while link is not None:
        link, bit = link
        bits.append(str(bit))
    return "".join(reversed(bits))


def validate_protocol(p: Protocol, table: FunctionTable) -> ValidationReport:
    """Check structure, that every bit is meaningful, and that p computes the table."""
    if (p.nrows, p.ncols) != (table.nrows, table.ncols):
        return ValidationReport(False, [f"protocol is {p.nrows}x{p.ncols}, table is "
                                        f"{table.nrows}x{table.ncols}"])

    def check_split(speaker, b0, b1, rows, cols, link):
        if not b0 or not b1:
            return "has an empty branch (bit is not meaningful)"
        if not _covers(b0, b1, rows if speaker == 1 else cols):
            return f"by party {speaker} does not partition its candidate set"
        return None

    ids = table.ids
    want_ids: dict = {}
    for rows, cols, out, _, link in _walk(p, check_split):
        if rows is None:
            where = _path_bits(link) or "root"
            return ValidationReport(False, [f"split at {where} {out}"], witness=where)
        want = want_ids.get(out)
        if want is None:
            want = want_ids[out] = table.label_id(out) if table.has_label(out) else -1
        if len(rows) == 1 and len(cols) == 1 and type(rows) is range and type(cols) is range:
            got = ids[rows[0], cols[0]]
        else:
            got = table.uniform_label_id(rows, cols)
        if got != want:
            bad = _first_bad_cell(table, rows, cols, out)
            return ValidationReport(
                False, [f"leaf at path {_path_bits(link)} outputs {out!r}, "
                        f"but f{bad} = {table.label(*bad)!r}"], witness=bad)
    return ValidationReport(True)


def communication_complexity(p: Protocol) -> int:
    """Longest root-to-leaf path in decision bits (the output message is not counted)."""
    return max(depth for _, _, _, depth in iter_leaves(p))


# --------------------------------------------------------------------------
# splitting helpers


def _halves(vals: range) -> tuple[range, range]:
    mid = len(vals) // 2
    return vals[:mid], vals[mid:]


def _c_splitter(c) -> Callable[[range], tuple[range, range]]:
    c = Fraction(c)
    if not 0 < c < 1:
        raise ProtocolError(f"c must lie in (0, 1), got {c}")

    def split(vals: range):
        m = max(1, floor(c * len(vals)))
        return vals[:m], vals[m:]

    return split


def _union(blocks: Sequence[range]) -> range:
    return range(blocks[0].start, blocks[-1].stop)


def _announce(speaker: int, blocks: Sequence[range], then: Callable):
    """State that has ``speaker`` reveal which of the contiguous ``blocks`` holds its value."""
    return ("announce", speaker, tuple(blocks), then)


def _expand_announce(state):
    _, speaker, blocks, then = state
    if len(blocks) == 1:
        return then(blocks[0])
    mid = len(blocks) // 2
    lo, hi = blocks[:mid], blocks[mid:]
    return _Fork(speaker, _union(lo), _union(hi),
                 _announce(speaker, lo, then), _announce(speaker, hi, then))


def _with_announce(expand: Callable) -> Callable:
    def wrapped(state):
        if isinstance(state, tuple) and state and state[0] == "announce":
            return _expand_announce(state)
        return expand(state)
    return wrapped


# --------------------------------------------------------------------------
# built-in protocols


def sealed_bid(k: int, problem: Union[ProblemSpec, str, Callable] = "2spa") -> Protocol:
    """Party 1 reveals its k bits, then party 2 reveals its k bits."""
    if isinstance(problem, str):
        problem = ProblemSpec.parse(problem)
    f = problem.output_function(k) if isinstance(problem, ProblemSpec) else problem
    size = 1 << k

    def expand(state):
        rows, cols = state
        if len(rows) > 1:
            a, b = _halves(rows)
            return _Fork(1, a, b, (a, cols), (b, cols))
        if len(cols) > 1:
            a, b = _halves(cols)
            return _Fork(2, a, b, (rows, a), (rows, b))
        return Leaf(f(rows[0], cols[0]))

    root = _grow(expand, (range(size), range(size)))
    return Protocol(size, size, root, "sealed", {"problem": str(problem)}, k=k)


def bisection_protocol(k: int) -> Protocol:
    """Millionaires bisection: paired half announcements until the answers differ."""
    size = 1 << k

    def expand(state):
        if state[0] == "tie":
            interval = state[1]
            if len(interval) == 1:
                return Leaf(1)
            lo, hi = _halves(interval)
            return _Fork(1, lo, hi, ("p2", interval, 0), ("p2", interval, 1))
        _, interval, h1 = state
        lo, hi = _halves(interval)
        s0 = ("tie", lo) if h1 == 0 else Leaf(1)
        s1 = ("tie", hi) if h1 == 1 else Leaf(2)
        return _Fork(2, lo, hi, s0, s1)

    root = _grow(expand, ("tie", range(size)))
    return Protocol(size, size, root, "bisection-protocol", {}, k=k)


def _auction(k: int, g: Optional[int], split: Callable, name: str, params: dict) -> Protocol:
    """Second-price auction skeleton shared by the English and bisection family.

    While both values share an interval, party 1 then party 2 say which part
    of it they are in.  Once they differ, the loser alone narrows down its own
    value and the winner stays silent; those steps do not count as
    bisections.  After ``g`` shared rounds the remaining interval is settled
    by an ascending English auction.
    """
    size = 1 << k

    def expand(state):
        tag = state[0]
        if tag == "tie":
            _, interval, rounds = state
            if len(interval) == 1:
                return Leaf((1, interval[0]))
            if g is not None and rounds >= g:
                return ("eng2", interval)
            lo, hi = split(interval)
            return _Fork(1, lo, hi, ("p2", interval, rounds, 0), ("p2", interval, rounds, 1))
        if tag == "p2":
            _, interval, rounds, h1 = state
            lo, hi = split(interval)
            s0 = ("tie", lo, rounds + 1) if h1 == 0 else ("search", 2, lo)
            s1 = ("tie", hi, rounds + 1) if h1 == 1 else ("search", 1, lo)
            return _Fork(2, lo, hi, s0, s1)
        if tag == "search":
            _, loser, vals = state
            if len(vals) == 1:
                return Leaf((3 - loser, vals[0]))
            a, b = split(vals)
            return _Fork(loser, a, b, ("search", loser, a), ("search", loser, b))
        # English auction at price interval[0]; party 2 is asked first so that
        # a tie ends in party 1's favour without splitting its column region.
        _, interval = state
        p = interval[0]
        if len(interval) == 1:
            return Leaf((1, p))
        rest = interval[1:]
        if tag == "eng2":
            return _Fork(2, interval[:1], rest, Leaf((1, p)), ("eng1", interval))
        return _Fork(1, interval[:1], rest, Leaf((2, p)), ("eng2", rest))

    root = _grow(expand, ("tie", range(size), 0))
    return Protocol(size, size, root, name, params, k=k)


def english_auction(k: int) -> Protocol:
    """Ascending price: stop at the first drop-out; perfectly private for 2spa."""
    return _auction(k, 0, _halves, "english", {})


def bisection_auction(k: int) -> Protocol:
    return _auction(k, None, _halves, "bisection-auction", {})


def bounded_bisection_auction(k: int, g: int) -> Protocol:
    if not 0 <= g <= k:
        raise ProtocolError(f"g must lie in [0, {k}], got {g}")
    return _auction(k, g, _halves, "bba", {"g": g})


def c_bisection_auction(k: int, c) -> Protocol:
    """Bisection auction whose lower part has ``max(1, floor(c*|I|))`` values."""
    c = Fraction(c)
    return _auction(k, None, _c_splitter(c), "c-bisection", {"c": str(c)})


def appendix_a_protocols(n: int) -> tuple[Protocol, Protocol]:
    """Protocols P and Q for ``f(x, y) = x // 2`` (low half) / ``2^(n-2)`` (high half).

    P: party 1 reveals x when x is in the low half, otherwise only that it is
    in the high half.  Q: party 1 reveals ``x // 2``, except that the top
    value is revealed exactly.
    """
    if n < 2:
        raise ProtocolError("appendix_a protocols need n >= 2")
    size = 1 << n
    half = size // 2
    def leaf_for(rows: range):
        return Leaf(appendix_a_output(rows[0], 0, n))

    def make(blocks, name):
        expand = _with_announce(lambda s: s)
        root = _grow(expand, _announce(1, blocks, leaf_for))
        return Protocol(size, size, root, name, {"n": n}, k=n)

    p_blocks = [range(x, x + 1) for x in range(half)] + [range(half, size)]
    q_blocks = [range(2 * v, 2 * v + 2) for v in range(half - 1)] + [
        range(size - 2, size - 1), range(size - 1, size)]
    return make(p_blocks, "appxa-P"), make(q_blocks, "appxa-Q")


def tpg_reference_protocol(k: int, c: int) -> Protocol:
    """A protocol for truthful public good whose only excess splitting is in Do-Not-Build.

    Party 2 reveals x2 if it is below c and otherwise only that it is at least
    c.  Party 1 then says whether x1 < c - x2 (Do Not Build), or else reveals x1
    exactly when it is below c and otherwise only that it is at least c.
    """
    size = 1 << k
    if not 0 <= c <= size - 1:
        raise ProtocolError(f"c must lie in [0, {size - 1}], got {c}")

    def party1(colblk: range):
        v = colblk[0]
        if len(colblk) == 1 and v < c:
            blocks = [range(0, c - v)] + [range(x, x + 1) for x in range(c - v, c)]
        else:
            blocks = [range(x, x + 1) for x in range(c)]
        blocks.append(range(c, size))

        def leaf(rowblk: range):
            return Leaf(truthful_public_good_output(rowblk[0], v, k, c))

        return _announce(1, blocks, leaf)

    col_blocks = [range(v, v + 1) for v in range(c)] + [range(c, size)]
    expand = _with_announce(lambda s: s)
    root = _grow(expand, _announce(2, col_blocks, party1))
    return Protocol(size, size, root, "tpg-ref", {"c": c}, k=k)


def mass_counterexample(n: int) -> tuple[FunctionTable, Protocol]:
    """The ``(n+1) x n`` example where ``f(x1, x2) = x2`` and party 1 says whether x1 = 0.

    Party 2 then reveals x2, so the tiles are ``{(0, i)}`` and ``{1..n} x {i}``.
    """
    if n < 1:
        raise ProtocolError("mass counterexample needs n >= 1")
    table = FunctionTable.from_function(lambda x1, x2: x2, n + 1, n)

    def after_first(rowblk: range):
        return _announce(2, [range(i, i + 1) for i in range(n)], lambda cb: Leaf(cb[0]))

    expand = _with_announce(lambda s: s)
    root = _grow(expand, _announce(1, [range(0, 1), range(1, n + 1)], after_first))
    return table, Protocol(n + 1, n, root, "mass-counterexample", {"n": n})


def reflect_columns(p: Protocol, relabel: Callable, name: Optional[str] = None) -> Protocol:
    """Mirror party 2's values (``x2 -> ncols-1-x2``) and map every leaf output."""
    top = p.ncols - 1

    def mirror(vals):
        if isinstance(vals, range):
            return range(top - vals[-1], top - vals[0] + 1)
        return frozenset(top - v for v in vals)

    def expand(state):
        node = state[1]
        if isinstance(node, Leaf):
            return Leaf(relabel(node.output))
        b0, b1 = node.branch0, node.branch1
        if node.speaker == 2:
            b0, b1 = mirror(b0), mirror(b1)
        return _Fork(node.speaker, b0, b1, ("node", node.child(0)), ("node", node.child(1)))

    root = _grow(expand, ("node", p.root))
    return Protocol(p.nrows, p.ncols, root, name or f"{p.name}-reflected", dict(p.params), k=p.k)


def pg_bisection_protocol(k: int) -> Protocol:
    """Millionaires bisection run on ``(x1, 2^k-1-x2)``: a public-good protocol."""
    relabel = {1: BUILD, 2: DO_NOT_BUILD}.__getitem__
    return reflect_columns(bisection_protocol(k), relabel, "pg-bisection")


# --------------------------------------------------------------------------
# inducibility


def find_unsplittable_block(tiling: Tiling) -> Optional[list[Rect]]:
    """First block of tiles that no protocol bit can split, or None if inducible.

    A block is splittable by party 1 when the graph joining rows that share a
    tile is disconnected (party 1 announces the component); likewise for
    columns.  Each component is then examined on its own.
    """
    _check_tiling(tiling)
    stack = [list(range(len(tiling.tiles)))]
    while stack:
        block = stack.pop()
        if len(block) == 1:
            continue
        parts = _components(tiling, block, rows=True)
        if len(parts) == 1:
            parts = _components(tiling, block, rows=False)
        if len(parts) == 1:
            return [tiling.tiles[i] for i in block]
        stack.extend(parts)
    return None


def is_protocol_inducible(tiling: Tiling) -> bool:
    return find_unsplittable_block(tiling) is None


def _check_tiling(tiling: Tiling) -> None:
    counts = np.zeros((tiling.nrows, tiling.ncols), dtype=np.int64)
    for t in tiling.tiles:
        if t.rows[0] < 0 or t.cols[0] < 0 or t.rows[-1] >= tiling.nrows or t.cols[-1] >= tiling.ncols:
            raise ValueError(f"tile {t!r} outside the {tiling.nrows}x{tiling.ncols} matrix")
        counts[np.ix_(t.rows, t.cols)] += 1
    if not np.all(counts == 1):
        r, c = np.argwhere(counts != 1)[0]
        raise ValueError(f"not a tiling: cell {(int(r), int(c))} covered {int(counts[r, c])} times")


def _components(tiling: Tiling, block: list[int], rows: bool) -> list[list[int]]:
    parent: dict[int, int] = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in block:
        idx = tiling.tiles[i].rows if rows else tiling.tiles[i].cols
        for v in idx:
            parent.setdefault(v, v)
        root = find(idx[0])
        for v in idx[1:]:
            rv = find(v)
            if rv != root:
                parent[rv] = root
    groups: dict[int, list[int]] = {}
    for i in block:
        idx = tiling.tiles[i].rows if rows else tiling.tiles[i].cols
        groups.setdefault(find(idx[0]), []).append(i)
    return list(groups.values())


# --------------------------------------------------------------------------
# JSON protocol description


def node_to_json(node: Node) -> dict:
    if isinstance(node, Leaf):
        return {"output": encode_label(node.output)}
    return {
        "speaker": node.speaker,
        "branch0": sorted(node.branch0),
        "branch1": sorted(node.branch1),
        "child0": node_to_json(node.child(0)),
        "child1": node_to_json(node.child(1)),
    }


def node_from_json(doc: dict) -> Node:
    if "output" in doc:
        return Leaf(decode_label(doc["output"]))
    try:
        return Split(int(doc["speaker"]), doc["branch0"], doc["branch1"],
                     node_from_json(doc["child0"]), node_from_json(doc["child1"]))
    except KeyError as exc:
        raise ProtocolError(f"protocol node missing field {exc}") from None


def protocol_to_json(p: Protocol) -> dict:
    return {"name": p.name, "params": p.params, "k": p.k, "nrows": p.nrows,
            "ncols": p.ncols, "root": node_to_json(p.root)}


def protocol_from_json(doc: dict) -> Protocol:
    if "root" not in doc:
        raise ProtocolError("protocol document needs a 'root' node")
    k = doc.get("k")
    nrows = doc.get("nrows", None if k is None else 1 << k)
    ncols = doc.get("ncols", nrows)
    if nrows is None:
        raise ProtocolError("protocol document needs k or nrows/ncols")
    return Protocol(int(nrows), int(ncols), node_from_json(doc["root"]),
                    doc.get("name", "custom"), doc.get("params", {}), k=k)


def dumps_protocol(p: Protocol) -> str:
    return json.dumps(protocol_to_json(p))


def loads_protocol(text: str) -> Protocol:
    return protocol_from_json(json.loads(text))
