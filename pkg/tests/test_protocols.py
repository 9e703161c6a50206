import json
from fractions import Fraction

import pytest

from parlab.protocols import (
    Leaf,
    Protocol,
    ProtocolError,
    Split,
    appendix_a_protocols,
    bisection_auction,
    bisection_protocol,
    bounded_bisection_auction,
    c_bisection_auction,
    communication_complexity,
    dumps_protocol,
    english_auction,
    find_unsplittable_block,
    induced_tiling,
    is_protocol_inducible,
    loads_protocol,
    pg_bisection_protocol,
    run,
    sealed_bid,
    tiling_and_depth,
    tpg_reference_protocol,
    validate_protocol,
)
from parlab.tiling import Rect, Tiling, build_table, ideal_partition, is_tiling, refines

from oracles import brute_max_bits, fibers, transcripts

PINWHEEL = Tiling([Rect([0], [0, 1]), Rect([0, 1], [2]), Rect([2], [1, 2]),
                   Rect([1, 2], [0]), Rect([1], [1])], 3, 3)


def builtins(k):
    """(problem, protocol) pairs for every built-in at width k."""
    out = [("2spa", sealed_bid(k)), ("2spa", english_auction(k)), ("2spa", bisection_auction(k)),
           ("millionaires", bisection_protocol(k)), ("millionaires", sealed_bid(k, "millionaires")),
           ("pg", pg_bisection_protocol(k)), ("pg", sealed_bid(k, "pg"))]
    out += [("2spa", bounded_bisection_auction(k, g)) for g in range(k + 1)]
    out += [("2spa", c_bisection_auction(k, c)) for c in ("1/4", "1/2", "3/4")]
    out += [(f"tpg:c={c}", tpg_reference_protocol(k, c)) for c in range(1, 2 ** k)]
    if k >= 2:
        P, Q = appendix_a_protocols(k)
        out += [("appxa", P), ("appxa", Q)]
    return out


def test_english_sells_to_bidder_two_for_three():
    assert run(english_auction(3), 3, 6).output == (2, 3)


def test_english_tie_at_top():
    assert run(english_auction(3), 7, 7).output == (1, 7)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sealed_bid_reveals_2k_bits(k):
    p = sealed_bid(k)
    for x1 in range(2 ** k):
        for x2 in range(2 ** k):
            assert len(run(p, x1, x2)) == 2 * k


def test_bisection_auction_k1():
    tr = run(bisection_auction(1), 0, 1)
    assert tr.output == (2, 0)
    assert len(tr.bits) == 2


def test_bisection_protocol_k1():
    tr = run(bisection_protocol(1), 1, 0)
    assert tr.output == 1 and len(tr.bits) == 2


def test_run_rejects_out_of_range():
    with pytest.raises(ProtocolError):
        run(sealed_bid(2), 4, 0)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_all_builtins_validate(k):
    for problem, p in builtins(k):
        t = build_table(problem, k)
        rep = validate_protocol(p, t)
        assert rep.ok, (problem, p, rep.errors)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_english_tiling_is_ideal_partition(k):
    t = build_table("2spa", k)
    assert induced_tiling(english_auction(k), t).cell_families() == ideal_partition(t).cell_families()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sealed_tiles_are_singletons(k):
    tiling = induced_tiling(sealed_bid(k), build_table("2spa", k))
    assert len(tiling) == 4 ** k
    assert all(t.size == 1 for t in tiling)


def test_bounded_bisection_small_counts():
    t = build_table("2spa", 1)
    assert len(induced_tiling(bounded_bisection_auction(1, 1), t)) == 4
    assert len(induced_tiling(bounded_bisection_auction(4, 2), build_table("2spa", 4))) == 60


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_bounded_endpoints(k):
    t = build_table("2spa", k)
    fam = lambda p: induced_tiling(p, t).cell_families()
    assert fam(bounded_bisection_auction(k, 0)) == fam(english_auction(k))
    assert fam(bounded_bisection_auction(k, k)) == fam(bisection_auction(k))
    assert fam(c_bisection_auction(k, Fraction(1, 2))) == fam(bisection_auction(k))


def test_parameter_errors():
    with pytest.raises(ProtocolError):
        bounded_bisection_auction(3, 4)
    with pytest.raises(ProtocolError):
        bounded_bisection_auction(3, -1)
    for c in (0, 1, Fraction(3, 2)):
        with pytest.raises(ProtocolError):
            c_bisection_auction(3, c)
    with pytest.raises(ProtocolError):
        tpg_reference_protocol(2, 4)


def test_c_bisection_split_sizes():
    p = c_bisection_auction(3, "1/4")
    # first split of {0..7}: lower part of floor(8/4) = 2 values
    assert p.root.branch0 == range(0, 2)
    # floor(2/4) = 0, so the clamp keeps a 2-value interval splitting 1 + 1
    node = p.root.child(0).child(0)
    assert node.branch0 == range(0, 1) and node.branch1 == range(1, 2)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_bisection_protocol_tile_counts(k):
    t = build_table("millionaires", k)
    tiling = induced_tiling(bisection_protocol(k), t)
    ones = sum(1 for lab in tiling.labels if lab == 1)
    assert ones == 2 ** (k + 1) - 1
    assert len(tiling) - ones == 2 ** k - 1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_appendix_a_tile_counts(n):
    t = build_table("appxa", n)
    for p in appendix_a_protocols(n):
        assert len(induced_tiling(p, t)) == 2 ** (n - 1) + 1


@pytest.mark.parametrize("c", range(1, 8))
def test_tpg_reference_dnb_tiles(c):
    t = build_table(f"tpg:c={c}", 3)
    tiling = induced_tiling(tpg_reference_protocol(3, c), t)
    assert sum(1 for lab in tiling.labels if lab == "DoNotBuild") == c
    # every Build tile is a whole ideal region
    ideal = ideal_partition(t)
    for tile, lab in zip(tiling.tiles, tiling.labels):
        if lab != "DoNotBuild":
            assert tile.size == ideal.block_size(t.label_id(lab))


def test_validate_catches_mislabeled_leaf():
    p = Protocol(2, 2, Split(1, [0], [1], Leaf(2), Leaf(1)), k=1)
    rep = validate_protocol(p, build_table("millionaires", 1))
    assert not rep.ok
    assert rep.witness == (0, 0)


def test_validate_catches_empty_branch():
    p = Protocol(2, 2, Split(1, [], [0, 1], Leaf(1), Leaf(1)), k=1)
    rep = validate_protocol(p, build_table("millionaires", 1))
    assert not rep.ok and "empty branch" in rep.errors[0]


def test_validate_catches_bad_split():
    p = Protocol(4, 4, Split(2, [0, 1], [1, 2, 3], Leaf(1), Leaf(1)), k=2)
    rep = validate_protocol(p, build_table("millionaires", 2))
    assert not rep.ok and "partition" in rep.errors[0]


def test_validate_catches_dimension_mismatch():
    assert not validate_protocol(sealed_bid(2), build_table("2spa", 3)).ok


def test_induced_tiling_rejects_wrong_protocol():
    with pytest.raises(ProtocolError):
        induced_tiling(bisection_protocol(2), build_table("2spa", 2))


def test_communication_complexity_examples():
    assert communication_complexity(sealed_bid(4)) == 8
    assert communication_complexity(english_auction(3)) >= 2 ** 3 - 1
    assert len(run(english_auction(3), 7, 7).bits) >= 7


@pytest.mark.parametrize("k", [1, 2, 3])
def test_communication_complexity_matches_brute_force(k):
    for _, p in builtins(k):
        assert communication_complexity(p) == brute_max_bits(p)
        assert tiling_and_depth(p)[1] == brute_max_bits(p)


@pytest.mark.parametrize("k", [2, 3])
def test_tiles_are_transcript_fibers(k):
    for problem, p in builtins(k):
        tiling = induced_tiling(p, build_table(problem, k))
        want = set(fibers(transcripts(p)).values())
        assert tiling.cell_families() == want


def test_induced_tilings_are_tilings_that_refine_ideal():
    for problem, p in builtins(3):
        t = build_table(problem, 3)
        tiling = induced_tiling(p, t)
        assert is_tiling(tiling.tiles, t)
        assert refines(tiling, ideal_partition(t))


def test_pinwheel_is_not_inducible():
    assert not is_protocol_inducible(PINWHEEL)
    block = find_unsplittable_block(PINWHEEL)
    assert len(block) == 5


def test_single_tile_is_inducible():
    assert is_protocol_inducible(Tiling([Rect(range(4), range(4))], 4, 4))


def test_pinwheel_inside_bigger_tiling():
    # the pinwheel on rows/cols 0..2 next to a separable strip is still stuck
    tiles = list(PINWHEEL.tiles) + [Rect(range(3), [3])]
    assert not is_protocol_inducible(Tiling(tiles, 3, 4))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_every_induced_tiling_is_inducible(k):
    for problem, p in builtins(k):
        assert is_protocol_inducible(induced_tiling(p, build_table(problem, k)))


def test_inducibility_rejects_malformed():
    with pytest.raises(ValueError):
        is_protocol_inducible(Tiling([Rect([0], [0])], 2, 2))


def test_protocol_json_roundtrip():
    p = bounded_bisection_auction(3, 1)
    doc = json.loads(dumps_protocol(p))
    assert set(doc["root"]) == {"speaker", "branch0", "branch1", "child0", "child1"}
    back = loads_protocol(json.dumps(doc))
    t = build_table("2spa", 3)
    assert validate_protocol(back, t).ok
    assert induced_tiling(back, t).cell_families() == induced_tiling(p, t).cell_families()
    for x1 in range(8):
        for x2 in range(8):
            assert run(back, x1, x2) == run(p, x1, x2)


def test_protocol_json_handwritten():
    text = json.dumps({"k": 1, "root": {
        "speaker": 1, "branch0": [0], "branch1": [1],
        "child0": {"speaker": 2, "branch0": [0], "branch1": [1],
                   "child0": {"output": "int:1"}, "child1": {"output": "int:2"}},
        "child1": {"output": "int:1"}}})
    p = loads_protocol(text)
    assert validate_protocol(p, build_table("millionaires", 1)).ok
    with pytest.raises(ProtocolError):
        loads_protocol(json.dumps({"k": 1, "root": {"speaker": 1}}))
