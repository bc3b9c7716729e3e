import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coinduct.errors import CoinductError, UnknownRegionError
from coinduct.groups import CyclicGroup
from coinduct.systems import (GOLDEN_MEAN, SFT, Cylinder, FullShift, PointSet, Pre, Product,
                              ProductSystem, TrivialFinite, Whole, make_query)

from conftest import D, ZZ, Z, elements


def brute_sft_nonempty(A, q):
    """Oracle: some word on the pinned window is a valid path whose ends can be
    extended forever in both directions."""
    A = np.asarray(A, dtype=int)
    m = len(A)
    M = np.linalg.matrix_power(A, m) > 0
    # s is extendable both ways iff some length-m path ends at s and one starts at s
    ext = M.any(axis=0) & M.any(axis=1)
    pinned = {}
    for g, r in q:
        for c, v in r.items:
            if pinned.setdefault(c + g, v) != v:
                return False
    if not pinned:
        return bool(ext.any())
    lo, hi = min(pinned), max(pinned)
    for word in itertools.product(range(m), repeat=hi - lo + 1):
        if any(word[c - lo] != v for c, v in pinned.items()):
            continue
        if not (ext[word[0]] and ext[word[-1]]):
            continue
        if all(A[word[i], word[i + 1]] for i in range(len(word) - 1)):
            return True
    return False


matrices = st.integers(2, 3).flatmap(
    lambda m: st.lists(st.lists(st.integers(0, 1), min_size=m, max_size=m), min_size=m,
                       max_size=m))


def queries(m, spread=4):
    pair = st.tuples(st.integers(-spread, spread),
                     st.dictionaries(st.integers(-2, 2), st.integers(0, m - 1), min_size=1,
                                     max_size=2).map(Cylinder.of))
    return st.lists(pair, max_size=3).map(make_query)


@settings(max_examples=300)
@given(data=st.data())
def test_sft_emptiness_matches_brute_force(data):
    A = data.draw(matrices)
    try:
        S = SFT(A)
    except CoinductError:
        # no bi-infinite path at all: the oracle agrees that nothing is extendable
        assert not brute_sft_nonempty(A, ())
        return
    q = data.draw(queries(len(A)))
    w = S.emptiness(q)
    assert (w is not None) == brute_sft_nonempty(A, q)
    if w is not None:
        assert S.replay(w, q)


def test_golden_mean_examples():
    S = SFT(GOLDEN_MEAN)
    assert S.is_empty(make_query([(0, Cylinder.of({0: 1, 1: 1}))]))
    assert not S.is_empty(make_query([(0, Cylinder.of({0: 1, 2: 1}))]))
    # the pair (g, R) pins R shifted by g
    assert S.is_empty(make_query([(0, Cylinder.of({0: 1})), (1, Cylinder.of({0: 1}))]))
    w = S.emptiness(make_query([(3, Cylinder.of({0: 1}))]))
    assert w.as_dict()[3] == 1


def test_sft_degenerate_inputs():
    with pytest.raises(CoinductError):
        SFT([[0, 1], [0, 0]])
    with pytest.raises(CoinductError):
        SFT([])
    S = SFT([[1, 1, 0], [0, 1, 0], [0, 0, 0]])
    assert S.is_empty(make_query([(0, Cylinder.of({0: 2}))]))
    with pytest.raises(UnknownRegionError):
        S.is_empty(make_query([(0, Cylinder.of({0: 5}))]))


@settings(max_examples=300)
@given(data=st.data())
def test_monotonicity_and_equivariance(data):
    S = FullShift(2, ZZ)
    pair = st.tuples(elements(ZZ), st.dictionaries(elements(ZZ), st.integers(0, 1), min_size=1,
                                                   max_size=2).map(Cylinder.of))
    q = make_query(data.draw(st.lists(pair, max_size=3)))
    extra = make_query(data.draw(st.lists(pair, max_size=2)))
    g0 = data.draw(elements(ZZ))
    if S.is_empty(q):
        assert S.is_empty(make_query(q + extra))
    w = S.emptiness(q)
    if w is not None:
        assert S.replay(w, q)
        # alpha_g0 of a witness for q witnesses the query translated by g0^-1
        moved = make_query([(ZZ.mul(g, ZZ.inv(g0)), r) for g, r in q])
        assert S.replay(S.act(g0, w), moved)


@settings(max_examples=300)
@given(data=st.data())
def test_pre_flattening(data):
    S = FullShift(2, D)
    h = data.draw(elements(D))
    g = data.draw(elements(D))
    R = Cylinder.of({data.draw(elements(D)): data.draw(st.integers(0, 1))})
    assert S.normalize([(g, Pre(h, R))]) == S.normalize([(D.mul(h, g), R)])


def test_whole_is_dropped():
    S = FullShift(2, Z)
    assert S.normalize([(3, Whole())]) == ()
    assert S.emptiness(()) is not None


def test_full_shift_conflict():
    S = FullShift(3, Z)
    assert S.is_empty([(0, Cylinder.of({2: 0})), (1, Cylinder.of({1: 1}))])
    assert not S.is_empty([(0, Cylinder.of({2: 0})), (1, Cylinder.of({1: 0}))])
    with pytest.raises(CoinductError):
        Cylinder.of([(0, 0), (0, 1)])


def test_trivial_finite():
    T = TrivialFinite(3, Z)
    a, b = PointSet.of({0, 1}), PointSet.of({1, 2})
    assert T.emptiness([(5, a), (-2, b)]).id == 1
    assert T.is_empty([(0, PointSet.of({0})), (9, PointSet.of({2}))])
    with pytest.raises(UnknownRegionError):
        T.normalize([(0, PointSet.of({3}))])


def test_product_system_matches_components():
    base = FullShift(2, Z)
    P = ProductSystem(base, 2)
    r = Product.of({0: Cylinder.of({0: 1}), 1: Cylinder.of({0: 0})})
    s = Product.of({0: Cylinder.of({1: 0})})
    w = P.emptiness([(0, r), (-1, s)])
    assert w is None
    w = P.emptiness([(0, r), (0, s)])
    assert P.replay(w, [(0, r), (0, s)])
    assert w.parts[1] is not None


def test_atoms_full_shift_and_sft():
    S = FullShift(2, Z)
    count, sets = S.atoms([make_query([(0, Cylinder.of({0: 0}))]),
                           make_query([(1, Cylinder.of({0: 1}))])])
    assert count == 4
    assert len(sets[0]) == 2 and len(sets[1]) == 2 and len(sets[0] & sets[1]) == 1
    G = SFT(GOLDEN_MEAN)
    count, sets = G.atoms([make_query([(0, Cylinder.of({0: 1}))]),
                           make_query([(1, Cylinder.of({0: 1}))])])
    assert count == 3
    assert not (sets[0] & sets[1])


def test_cyclic_group_shift():
    S = FullShift(2, CyclicGroup(3))
    assert S.is_empty([(0, Cylinder.of({0: 0})), (1, Cylinder.of({2: 1}))])
