import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coinduct.coinduction import coinduce
from coinduct.errors import BudgetError, CoinductError, InfiniteIndexError
from coinduct.groups import (CosetSpace, CyclicGroup, Multiples, ProductSubgroup, TrivialSubgroup,
                             WholeSubgroup, ball)
from coinduct.independence import (assignment_cap, coordinate_project, independence_fold,
                                   is_independent, it_stream, it_witness_stream,
                                   max_independence, refute)
from coinduct.systems import (GOLDEN_MEAN, SFT, Cylinder, FullShift, PointSet, Product,
                              TrivialFinite)

from conftest import D, ZZ, Z

GOLDEN = SFT(GOLDEN_MEAN)
ZERO, ONE = Cylinder.of({0: 0}), Cylinder.of({0: 1})


def brute_independent(sys, regions, I):
    from coinduct.independence import assignment_query
    return all(not sys.is_empty(assignment_query(regions, sorted(I), om))
               for om in itertools.product(range(len(regions)), repeat=len(I)))


def test_full_shift_is_independent():
    res = is_independent(FullShift(2, Z), [ZERO, ONE], range(6))
    assert res.ok and res.size == 6 and res.verify(FullShift(2, Z))


def test_golden_mean_failure():
    res = is_independent(GOLDEN, [ZERO, ONE], [0, 1])
    assert not res.ok
    assert res.omega == (1, 1)
    assert res.verify(GOLDEN)
    assert is_independent(GOLDEN, [ZERO, ONE], [0, 2, 4]).ok


def test_budget_error():
    with pytest.raises(BudgetError):
        is_independent(FullShift(2, Z), [ZERO, ONE], range(10), cap=100)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("COINDUCT_BUDGET", "7")
    assert assignment_cap() == 7
    assert assignment_cap(3) == 3


@settings(max_examples=100)
@given(seed=st.integers(0, 10 ** 6))
def test_heredity(seed):
    rng = random.Random(seed)
    pool = rng.sample(range(-10, 11), rng.randint(1, 6))
    res = max_independence(GOLDEN, [ZERO, ONE], pool)
    cert = res.certificate
    assert cert.verify(GOLDEN)
    subset = [g for g in cert.elements if rng.random() < 0.5]
    sub = cert.restrict(subset)
    assert sub.verify(GOLDEN)
    with pytest.raises(CoinductError):
        cert.restrict([99])


@settings(max_examples=100)
@given(seed=st.integers(0, 10 ** 6), g0=st.integers(-20, 20))
def test_translation(seed, g0):
    rng = random.Random(seed)
    pool = rng.sample(range(-8, 9), 4)
    cert = max_independence(GOLDEN, [ZERO, ONE], pool).certificate
    moved = cert.translate(GOLDEN, g0)
    assert moved.verify(GOLDEN)
    assert sorted(moved.elements) == sorted(g + g0 for g in cert.elements)


def test_max_independence_matches_brute_force():
    rng = random.Random(4)
    for _ in range(20):
        pool = rng.sample(range(-6, 7), 6)
        res = max_independence(GOLDEN, [ZERO, ONE], pool)
        best = max(r for r in range(len(pool) + 1)
                   for I in itertools.combinations(pool, r)
                   if brute_independent(GOLDEN, [ZERO, ONE], I))
        assert res.size == best and res.exhaustive


def test_subsystem_monotonicity():
    # certificates of the golden-mean SFT replay in the full 2-shift
    cert = max_independence(GOLDEN, [ZERO, ONE], range(0, 9)).certificate
    assert cert.size >= 4
    assert cert.verify(FullShift(2, Z))


def test_fold_golden_mean_index_two():
    cs = CosetSpace(Multiples(Z, 2))
    cert = max_independence(GOLDEN, [ZERO, ONE], range(0, 10)).certificate
    folded = independence_fold(GOLDEN, cert, cs)
    assert folded.verify(GOLDEN)
    assert 2 * folded.size >= cert.size
    assert all(g % 2 == 0 for g in folded.elements)


def test_fold_dihedral():
    co = coinduce(FullShift(2, Z), CosetSpace(Multiples(D, 1)))
    U = Product.of({(0, 0): ZERO})
    V = Product.of({(0, 0): ONE})
    I = [(0, 0), (1, 1), (2, 0), (3, 1), (5, 1)]
    cert = is_independent(co, [U, V], I)
    assert cert.ok
    cs = CosetSpace(Multiples(D, 1))
    folded = independence_fold(co, cert, cs)
    assert folded.verify(co)
    assert folded.size * 2 >= cert.size
    assert all(g[1] == 0 for g in folded.elements)
    with pytest.raises(InfiniteIndexError):
        independence_fold(co, cert, CosetSpace(TrivialSubgroup(D)))


def test_h_certificates_are_g_certificates():
    cert = max_independence(GOLDEN, [ZERO, ONE], range(0, 12, 2)).certificate
    assert all(g % 2 == 0 for g in cert.elements)
    assert cert.verify(GOLDEN)


def test_coordinate_project():
    base = GOLDEN
    co = coinduce(base, CosetSpace(Multiples(D, 1)))
    U = Product.of({(0, 0): ZERO, (0, 1): ZERO})
    V = Product.of({(0, 0): ONE, (0, 1): ONE})
    I = [(0, 0), (2, 0), (4, 0)]
    cert = is_independent(co, [U, V], I)
    assert cert.ok
    for theta in ((0, 0), (0, 1)):
        proj = coordinate_project(co, cert, theta)
        assert proj.verify(base)
    with pytest.raises(CoinductError):
        coordinate_project(co, is_independent(co, [U, V], [(0, 0), (1, 1)]), (0, 0))


def test_it_stream_disjoint_supports():
    cs = CosetSpace(ProductSubgroup(ZZ, WholeSubgroup(Z), TrivialSubgroup(Z)))
    co = coinduce(TrivialFinite(2, Z), cs)
    A = Product.of({(0, 0): PointSet.of({0}), (0, 1): PointSet.of({1})})
    B = Product.of({(0, 0): PointSet.of({1})})
    stream = it_stream(co, [A, B], 6)
    assert len(set(stream)) == 6
    cert = it_witness_stream(co, [A, B], 6)
    assert cert.ok and cert.size == 6 and cert.verify(co)
    with pytest.raises(CoinductError):
        it_witness_stream(coinduce(FullShift(2, Z), CosetSpace(Multiples(D, 1))),
                          [Product.of({(0, 0): ZERO})], 2)


def test_refutation_record_is_complete_on_small_pool():
    pool = list(range(0, 7))
    rec = refute(GOLDEN, [ZERO, ONE], pool, 5)
    assert rec.refuted
    assert rec.verify(GOLDEN)
    assert rec.verify_coverage(GOLDEN)
    for I in itertools.combinations(pool, 5):
        assert not brute_independent(GOLDEN, [ZERO, ONE], I)
    found = refute(GOLDEN, [ZERO, ONE], pool, 3)
    assert not found.refuted
    assert found.counterexample.verify(GOLDEN)


def test_anchored_refutation():
    rec = refute(GOLDEN, [ZERO, ONE], list(range(-4, 5)), 6, anchor=0)
    assert rec.refuted and rec.verify_coverage(GOLDEN)
    assert rec.anchor == 0


def test_trivial_system_has_no_independent_pairs():
    T = TrivialFinite(2, Z)
    rec = refute(T, [PointSet.of({0}), PointSet.of({1})], list(ball(Z, 3)), 2)
    assert rec.refuted and rec.verify_coverage(T)
