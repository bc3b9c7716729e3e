import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coinduct.coinduction import (CoinducedSystem, DihedralPairSystem, coinduce,
                                  section_transport, translate_query)
from coinduct.errors import GroupMismatchError, UnknownRegionError
from coinduct.groups import (CosetSpace, CyclicGroup, Multiples, ProductSubgroup, TrivialSubgroup,
                             WholeSubgroup, ball, normal_core, z_factor)
from coinduct.systems import Cylinder, FullShift, PointSet, Product, TrivialFinite, make_query
from coinduct.x1 import JumpTable, Nbhd, X1System

from conftest import D, ZZ, Z, elements


def random_cyl_query(rng, G, radius=3, m=2):
    pts = list(ball(G, radius))
    return make_query((rng.choice(pts), Cylinder.of({rng.choice(pts): rng.randrange(m)}))
                      for _ in range(rng.randint(1, 4)))


def as_bernoulli(q):
    # coordinate theta of the co-induced trivial system is coordinate theta of the shift
    return make_query((g, Product.of({c: PointSet.of({v})})) for g, r in q for c, v in r.items)


@pytest.mark.parametrize("G", [Z, ZZ, D], ids=repr)
def test_bernoulli_equals_full_shift(G):
    rng = random.Random(11)
    bern = coinduce(TrivialFinite(2, CyclicGroup(1)), CosetSpace(TrivialSubgroup(G)))
    shift = FullShift(2, G)
    for _ in range(200):
        q = random_cyl_query(rng, G)
        w = bern.emptiness(as_bernoulli(q))
        assert (w is None) == shift.is_empty(q)
        if w is not None:
            assert bern.replay(w, as_bernoulli(q))


def pair_query(rng, base_regions, radius=4):
    pts = list(ball(D, radius))
    out = []
    for _ in range(rng.randint(1, 3)):
        parts = {}
        for theta in ((0, 0), (0, 1)):
            if rng.random() < 0.7:
                parts[theta] = rng.choice(base_regions)
        if parts:
            out.append((rng.choice(pts), Product.of(parts)))
    return make_query(out)


@pytest.mark.parametrize("which", ["shift", "x1"])
def test_dihedral_pair_agrees_with_generic(which):
    if which == "shift":
        base = FullShift(2, Z)
        regions = [Cylinder.of({0: 0}), Cylinder.of({0: 1}), Cylinder.of({1: 1, 2: 0})]
    else:
        base = X1System(JumpTable(3), 2)
        regions = [Nbhd(1, 0), Nbhd(1, 1), Nbhd(2, 0), Nbhd(1, None), Nbhd(2, -1)]
    generic = coinduce(base, CosetSpace(Multiples(D, 1)))
    pair = DihedralPairSystem(base)
    rng = random.Random(5)
    for _ in range(200):
        q = pair_query(rng, regions)
        wg, wp = generic.emptiness(q), pair.emptiness(q)
        assert (wg is None) == (wp is None), q
        if wg is not None:
            assert pair.replay(wg, q) and generic.replay(wp, q)


def test_decomposition_rules():
    pair = DihedralPairSystem(FullShift(2, Z))
    U, V = Cylinder.of({0: 0}), Cylinder.of({0: 1})
    r = Product.of({(0, 0): U, (0, 1): V})
    assert pair.decompose([((3, 0), r)]) == {(0, 0): ((3, U),), (0, 1): ((-3, V),)}
    assert pair.decompose([((3, 1), r)]) == {(0, 0): ((-3, V),), (0, 1): ((3, U),)}
    generic = coinduce(FullShift(2, Z), CosetSpace(z_factor(D)))
    assert generic.decompose([((3, 1), r)]) == pair.decompose([((3, 1), r)])


@settings(max_examples=300)
@given(g1=elements(D), g2=elements(D), seed=st.integers(0, 10 ** 6))
def test_action_is_a_left_action_and_equivariant(g1, g2, seed):
    co = coinduce(FullShift(2, Z), CosetSpace(Multiples(D, 2)))
    rng = random.Random(seed)
    cosets = co.cs.cosets()
    q = make_query((rng.choice(list(ball(D, 3))),
                    Product.of({rng.choice(cosets): Cylinder.of({rng.randint(-2, 2): rng.randint(0, 1)})}))
                   for _ in range(3))
    w = co.emptiness(q)
    if w is None:
        return
    assert co.act(g1, co.act(g2, w)) == co.act(D.mul(g1, g2), w)
    moved = make_query((D.mul(g, D.inv(g1)), r) for g, r in q)
    assert co.replay(co.act(g1, w), moved)


def test_section_transport():
    H = Multiples(D, 1)
    cs0 = CosetSpace(H)
    cs1 = CosetSpace(H, {(0, 1): (5, 1)})
    base = FullShift(2, Z)
    co0, co1 = coinduce(base, cs0), coinduce(base, cs1)
    rng = random.Random(2)
    regions = [Cylinder.of({0: 0}), Cylinder.of({0: 1}), Cylinder.of({0: 1, 3: 1})]
    differ = 0
    for _ in range(200):
        q = pair_query(rng, regions)
        a = co0.is_empty(q)
        assert a == co1.is_empty(section_transport(q, cs0, cs1))
        assert co1.is_empty(q) == co0.is_empty(section_transport(q, cs1, cs0))
        differ += a != co1.is_empty(q)
    # the two sections give conjugate, not identical, systems
    assert differ > 0


def test_normal_subgroup_fixes_cosets():
    for cs in (CosetSpace(Multiples(D, 1)), CosetSpace(Multiples(D, 3)),
               CosetSpace(Multiples(Z, 4))):
        N = normal_core(cs)
        for n in ball(cs.group, 5):
            if N.contains(n):
                assert all(cs.act(t, n) == t for t in cs.cosets())


def test_translate_query_touches_moved_coordinates():
    cs = CosetSpace(ProductSubgroup(ZZ, WholeSubgroup(Z), TrivialSubgroup(Z)))
    U = PointSet.of({1})
    q = make_query([((4, 7), Product.of({(0, 2): U}))])
    base = TrivialFinite(2, Z)
    assert translate_query(q, cs, base) == {(0, 9): ((4, U),)}


def test_errors():
    with pytest.raises(GroupMismatchError):
        CoinducedSystem(FullShift(2, ZZ), CosetSpace(Multiples(D, 1)))
    with pytest.raises(GroupMismatchError):
        DihedralPairSystem(FullShift(2, ZZ))
    co = coinduce(FullShift(2, Z), CosetSpace(Multiples(D, 1)))
    with pytest.raises(UnknownRegionError):
        co.is_empty([((0, 0), Cylinder.of({0: 1}))])
    with pytest.raises(UnknownRegionError):
        co.is_empty([((0, 0), Product.of({(3, 1): Cylinder.of({0: 1})}))])
