"""Randomized invariants (hypothesis)."""

from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from parlab.par import mixture, par_report, point_mass, product, seeded_random, uniform
from parlab.protocols import (
    bisection_protocol,
    bounded_bisection_auction,
    c_bisection_auction,
    english_auction,
    induced_tiling,
    pg_bisection_protocol,
    reflect_columns,
    sealed_bid,
)
from parlab.problems import ProblemSpec
from parlab.tiling import FunctionTable, build_table, i_ideal_partition, ideal_partition, is_tiling, refines

from oracles import fibers, transcripts

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

FIELDS = ("worst_objective", "worst_wrt1", "worst_wrt2", "avg_objective", "avg_wrt1", "avg_wrt2")


def spa_protocols(k):
    return st.one_of(
        st.just(sealed_bid(k)), st.just(english_auction(k)),
        st.integers(0, k).map(lambda g: bounded_bisection_auction(k, g)),
        st.sampled_from(["1/4", "1/3", "1/2", "2/3", "3/4"]).map(lambda c: c_bisection_auction(k, c)),
    )


@st.composite
def spa_case(draw, kmax=5):
    k = draw(st.integers(1, kmax))
    return k, draw(spa_protocols(k))


rationals = st.fractions(min_value=0, max_value=1, max_denominator=50)


@SETTINGS
@given(spa_case())
def test_induced_tilings_refine_ideal(case):
    k, p = case
    t = build_table("2spa", k)
    tiling = induced_tiling(p, t)
    assert is_tiling(tiling.tiles, t)
    assert refines(tiling, ideal_partition(t))
    for i in (1, 2):
        assert refines(i_ideal_partition(t, i), ideal_partition(t))


@SETTINGS
@given(spa_case(kmax=4))
def test_tiles_are_transcript_fibers(case):
    k, p = case
    tiling = induced_tiling(p, build_table("2spa", k))
    assert tiling.cell_families() == set(fibers(transcripts(p)).values())


@SETTINGS
@given(spa_case(kmax=4), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), rationals)
def test_average_pars_are_linear_in_the_distribution(case, s1, s2, lam):
    k, p = case
    t = build_table("2spa", k)
    tiling = induced_tiling(p, t)
    d1, d2 = seeded_random(k, s1, grid=4), seeded_random(k, s2, grid=4)
    mix = par_report(tiling, t, mixture(lam, d1, d2))
    r1, r2 = par_report(tiling, t, d1), par_report(tiling, t, d2)
    for name in ("avg_objective", "avg_wrt1", "avg_wrt2"):
        assert mix.value(name) == lam * r1.value(name) + (1 - lam) * r2.value(name)


@SETTINGS
@given(spa_case(kmax=4), st.data())
def test_pars_at_least_one_and_point_mass_bounded_by_worst(case, data):
    k, p = case
    t = build_table("2spa", k)
    tiling = induced_tiling(p, t)
    rep = par_report(tiling, t)
    n = 2 ** k
    cell = (data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1)))
    pm = par_report(tiling, t, point_mass(cell, n, n))
    for name in FIELDS:
        assert rep.value(name) >= 1
    for mode in ("objective", "wrt1", "wrt2"):
        assert pm.value("avg_" + mode) == pm.value("worst_" + mode) <= rep.value("worst_" + mode)
        assert rep.value("avg_" + mode) <= rep.value("worst_" + mode)


@SETTINGS
@given(spa_case(kmax=4), st.data())
def test_mirroring_and_relabeling_keeps_pars(case, data):
    """Mirror party 2's values and rename every output.

    The mirrored protocol on the mirrored function, under the mirrored
    distribution, is the same object with relabeled cells: no PAR may move.
    """
    k, p = case
    n = 2 ** k
    w1 = data.draw(st.lists(st.integers(0, 5), min_size=n, max_size=n).filter(any))
    w2 = data.draw(st.lists(st.integers(0, 5), min_size=n, max_size=n).filter(any))
    t = build_table("2spa", k)
    base = par_report(induced_tiling(p, t), t, product(w1, w2))
    f = ProblemSpec.parse("2spa").output_function(k)
    rt = FunctionTable.from_function(lambda x1, x2: ("renamed", f(x1, n - 1 - x2)), n, n, k=k)
    rp = reflect_columns(p, lambda out: ("renamed", out))
    mirrored = par_report(induced_tiling(rp, rt), rt, product(w1, w2[::-1]))
    for name in FIELDS:
        assert base.value(name) == mirrored.value(name), name


@pytest.mark.parametrize("k", range(1, 9))
def test_pg_bisection_equals_mp_bisection(k):
    pg = par_report(induced_tiling(pg_bisection_protocol(k), t := build_table("pg", k)), t)
    mp = par_report(induced_tiling(bisection_protocol(k), m := build_table("millionaires", k)), m)
    for name in FIELDS:
        assert pg.value(name) == mp.value(name), name
    assert pg.tiles == mp.tiles


@SETTINGS
@given(st.integers(1, 6))
def test_uniform_equals_explicit_product(k):
    t = build_table("2spa", k)
    tiling = induced_tiling(bounded_bisection_auction(k, k // 2), t)
    n = 2 ** k
    a = par_report(tiling, t, uniform(k))
    b = par_report(tiling, t, product([1] * n, [F(1, 3)] * n))
    for name in FIELDS:
        assert a.value(name) == b.value(name)
