import json

import pytest

from parlab.problems import ProblemError, ProblemSpec
from parlab.tiling import (
    FunctionTable,
    Partition,
    Rect,
    Region,
    Tiling,
    build_table,
    decode_label,
    encode_label,
    i_ideal_partition,
    i_induced_tiling,
    i_partition,
    ideal_partition,
    is_monochromatic,
    is_partition,
    is_tiling,
    refines,
)

from oracles import brute_ideal_sizes


def test_millionaires_k1_layout():
    t = build_table("millionaires", 1)
    assert [[t.label(r, c) for c in range(2)] for r in range(2)] == [[1, 2], [1, 1]]


def test_2spa_k1_labels():
    t = build_table("2spa", 1)
    assert t.label(0, 0) == (1, 0)
    assert t.label(0, 1) == (2, 0)
    assert t.label(1, 0) == (1, 0)
    assert t.label(1, 1) == (1, 1)


def test_tpg_table_cells():
    t = build_table("tpg:c=4", 3)
    assert t.label(2, 2) == ("Build", 2, 2)
    assert t.label(3, 0) == "DoNotBuild"


def test_build_table_errors(monkeypatch):
    with pytest.raises(ProblemError):
        build_table("2spa", 0)
    with pytest.raises(ProblemError):
        build_table("2spa", 13)
    with pytest.raises(ProblemError):
        build_table("2spa", 3, kcap=2)
    monkeypatch.setenv("PARLAB_KCAP", "2")
    with pytest.raises(ProblemError):
        build_table(ProblemSpec.parse("mp"), 3)
    with pytest.raises(ProblemError):
        build_table("bogus", 2)


def test_ideal_partition_millionaires_k1():
    t = build_table("millionaires", 1)
    ideal = ideal_partition(t)
    assert sorted(ideal.block_size(b) for b in range(len(ideal))) == [1, 3]


def test_ideal_regions_2spa_k3():
    t = build_table("2spa", 3)
    ideal = ideal_partition(t)
    assert ideal.block_size(ideal.block_id((5, 0))) == 8
    region = ideal.block_of((3, 6))
    assert region.cell_set() == frozenset((3, c) for c in range(4, 8))


@pytest.mark.parametrize("problem", ["millionaires", "2spa", "pg", "tpg:c=3", "appxa"])
@pytest.mark.parametrize("k", [2, 3, 4, 6])
def test_ideal_sizes_match_brute_force(problem, k):
    if problem.startswith("tpg") and k < 2:
        pytest.skip("cost out of range")
    spec = ProblemSpec.parse(problem)
    t = build_table(spec, k)
    ideal = ideal_partition(t)
    want = brute_ideal_sizes(spec.output_function(k), 2 ** k, 2 ** k)
    for cell, size in want.items():
        assert ideal.block_size(ideal.block_id(cell)) == size
    assert len(ideal) == len(set(t.labels))


def test_ideal_regions_are_monochromatic_partition():
    t = build_table("tpg:c=5", 3)
    ideal = ideal_partition(t)
    assert is_partition(ideal.blocks, t)
    assert all(is_monochromatic(r, t) for r in ideal.blocks)


@pytest.mark.parametrize("k", range(1, 9))
def test_2spa_ideal_regions_are_rectangles(k):
    t = build_table("2spa", k)
    ids = t.ids
    for lab in range(len(t.labels)):
        rows = {int(r) for r in (ids == lab).any(axis=1).nonzero()[0]}
        cols = {int(c) for c in (ids == lab).any(axis=0).nonzero()[0]}
        assert len(rows) * len(cols) == t.label_counts[lab]


@pytest.mark.parametrize("k", range(1, 9))
def test_millionaires_one_wins_region_size(k):
    t = build_table("millionaires", k)
    assert t.label_counts[t.label_id(1)] == 2 ** (k - 1) * (2 ** k + 1)


def test_i_partition_examples():
    t = build_table("millionaires", 1)
    ideal = ideal_partition(t)
    ones = ideal.block_of((0, 0))
    pieces = i_partition(ones, 2)
    assert sorted(p.size for p in pieces) == [1, 2]
    assert {p.cell_set() for p in pieces} == {frozenset({(0, 0), (1, 0)}), frozenset({(1, 1)})}
    row = Region([(2, 0), (2, 3), (2, 5)])
    assert [p.cell_set() for p in i_partition(row, 1)] == [row.cell_set()]
    col = Rect(range(8), [0])
    assert [p.size for p in i_partition(col, 2)] == [8]
    with pytest.raises(ValueError):
        i_partition(col, 3)


def test_i_ideal_partition_millionaires_k1():
    t = build_table("millionaires", 1)
    part = i_ideal_partition(t, 2)
    assert sorted(part.block_size(b) for b in range(len(part))) == [1, 1, 2]
    assert refines(part, ideal_partition(t))
    assert not refines(ideal_partition(t), part)


def _brute_i_ideal(t, i):
    groups = {}
    for x1 in range(t.nrows):
        for x2 in range(t.ncols):
            key = (x1 if i == 1 else x2, t.label(x1, x2))
            groups.setdefault(key, set()).add((x1, x2))
    return {frozenset(g) for g in groups.values()}


@pytest.mark.parametrize("i", [1, 2])
@pytest.mark.parametrize("problem", ["2spa", "millionaires", "tpg:c=6"])
def test_i_ideal_partition_matches_brute_force(problem, i):
    t = build_table(problem, 4)
    part = i_ideal_partition(t, i)
    assert part.cell_families() == _brute_i_ideal(t, i)
    assert all(isinstance(b, Rect) for b in part.blocks)
    assert refines(part, ideal_partition(t))


def test_2spa_k4_one_partition_structure():
    # 1-wins regions are columns, so 1-slicing makes singletons; 2-wins are rows already
    t = build_table("2spa", 4)
    part = i_ideal_partition(t, 1)
    sizes = sorted(part.block_size(b) for b in range(len(part)))
    n = 16
    assert len(part) == n * (n + 1) // 2 + (n - 1)
    assert sizes.count(1) == n * (n + 1) // 2 + 1
    assert sum(sizes) == n * n


def test_is_monochromatic_examples():
    t = build_table("millionaires", 1)
    assert is_monochromatic(Region([(0, 1)]), t)
    assert not is_monochromatic(Rect(range(2), range(2)), t)
    t3 = build_table("2spa", 3)
    assert is_monochromatic(Rect([3], range(4, 8)), t3)


def test_is_partition_and_tiling():
    t = build_table("millionaires", 1)
    good = [Rect([0], [0, 1]), Rect([1], [0, 1])]
    assert is_tiling(good, t)
    assert not is_tiling([Rect([0], [0, 1]), Rect([0, 1], [1]), Rect([1], [0])], t)
    assert not is_tiling([Rect([0], [0, 1])], t)
    assert is_partition([Region([(0, 0), (1, 1)]), Region([(0, 1), (1, 0)])], t)
    assert not is_tiling([Region([(0, 0), (1, 1)]), Region([(0, 1), (1, 0)])], t)
    assert not is_partition([Rect([0, 2], [0])], t)


def test_partition_rejects_overlap_and_gaps():
    with pytest.raises(ValueError):
        Partition([Rect([0], [0, 1]), Rect([0, 1], [1]), Rect([1], [0])], 2, 2).index
    with pytest.raises(ValueError):
        Partition([Rect([0], [0, 1])], 2, 2).index


def test_singletons_refine_everything():
    t = build_table("2spa", 2)
    singles = Tiling([Rect([r], [c]) for r in range(4) for c in range(4)], 4, 4)
    assert refines(singles, ideal_partition(t))
    assert refines(singles, i_ideal_partition(t, 1))


def test_i_induced_tiling_slices_every_tile():
    tiling = Tiling([Rect(range(2), range(4)), Rect(range(2, 4), range(4))], 4, 4, ["a", "b"])
    sliced = i_induced_tiling(tiling, 2)
    assert len(sliced) == 8
    assert all(len(r.cols) == 1 for r in sliced)
    assert sliced.labels.count("a") == 4


def test_rect_basics():
    r = Rect([3, 1, 2], [5])
    assert r.rows == (1, 2, 3)
    assert r.size == 3
    assert (2, 5) in r and (2, 4) not in r
    assert r == Rect(range(1, 4), [5])
    assert r.first_cell() == (1, 5)
    with pytest.raises(ValueError):
        Rect([], [1])


def test_label_encoding_roundtrip():
    for lab in [1, "Build", (2, 3), ("Build", 0, 3)]:
        assert decode_label(encode_label(lab)) == lab


def test_table_json_roundtrip():
    t = build_table("tpg:c=3", 2)
    back = FunctionTable.from_json(json.loads(json.dumps(t.to_json())))
    assert back.labels == t.labels
    assert (back.ids == t.ids).all()


def test_tiling_json_roundtrip():
    tiling = Tiling([Rect([0], [0, 1]), Rect([1], [0, 1])], 2, 2, [(1, 0), (2, 1)])
    doc = json.loads(json.dumps(tiling.to_json(k=1)))
    assert doc["k"] == 1 and doc["tiles"][0] == {"rows": [0], "cols": [0, 1], "label": encode_label((1, 0))}
    back = Tiling.from_json(doc)
    assert back.cell_families() == tiling.cell_families()
    assert back.labels == tiling.labels
