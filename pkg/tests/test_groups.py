import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coinduct.errors import BudgetError, CoinductError, InfiniteIndexError
from coinduct.groups import (CosetSpace, CyclicGroup, DirectProduct, Multiples, ProductSubgroup,
                             TrivialSubgroup, WholeSubgroup, acts_centrally, ball, cocycle,
                             coset_partition, decompose, excluded_by, neumann_witness,
                             normal_core, z_factor)

from conftest import D, ZZ, Z, dihedral, elements, small_int, zz

GROUPS = [Z, D, ZZ, CyclicGroup(6), DirectProduct(Z, CyclicGroup(3))]


def coset_spaces():
    return [
        CosetSpace(Multiples(Z, 3)),
        CosetSpace(Multiples(D, 1)),
        CosetSpace(Multiples(D, 2)),
        CosetSpace(z_factor(D)),
        CosetSpace(ProductSubgroup(ZZ, WholeSubgroup(Z), TrivialSubgroup(Z))),
        CosetSpace(TrivialSubgroup(Z)),
        CosetSpace(Multiples(CyclicGroup(6), 2)),
    ]


@pytest.mark.parametrize("G", GROUPS, ids=repr)
@settings(max_examples=1000)
@given(data=st.data())
def test_group_laws(G, data):
    a, b, c = (data.draw(elements(G)) for _ in range(3))
    e = G.identity
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(a, e) == a == G.mul(e, a)
    assert G.mul(a, G.inv(a)) == e == G.mul(G.inv(a), a)
    assert G.is_element(G.mul(a, b))


@settings(max_examples=1000)
@given(a=dihedral, b=dihedral)
def test_dihedral_multiplication_rule(a, b):
    (n, x), (m, y) = a, b
    assert D.mul(a, b) == (n + (-1) ** x * m, (x + y) % 2)


def test_dihedral_is_not_abelian():
    assert D.mul((1, 0), (0, 1)) != D.mul((0, 1), (1, 0))


def test_ball_shortlex_and_sizes():
    assert ball(Z, 2) == (0, 1, -1, 2, -2)
    assert len(ball(ZZ, 3)) == 25
    assert ball(D, 0) == ((0, 0),)
    assert len(ball(CyclicGroup(5), 10)) == 5
    with pytest.raises(ValueError):
        ball(Z, -1)


@pytest.mark.parametrize("cs", coset_spaces(), ids=repr)
@settings(max_examples=1000)
@given(data=st.data())
def test_cocycle_identity(cs, data):
    G = cs.group
    g1 = data.draw(elements(G))
    g2 = data.draw(elements(G))
    theta = cs.coset_of(data.draw(elements(G)))
    h12, t12 = cocycle(theta, G.mul(g1, g2), cs)
    h1, t1 = cocycle(theta, g1, cs)
    h2, t2 = cocycle(t1, g2, cs)
    assert t12 == t2
    assert h12 == G.mul(h1, h2)
    assert cs.subgroup.contains(h1)


@pytest.mark.parametrize("cs", coset_spaces(), ids=repr)
@settings(max_examples=500)
@given(data=st.data())
def test_decompose_reconstructs(cs, data):
    G = cs.group
    g = data.draw(elements(G))
    h, theta = decompose(g, cs)
    assert cs.subgroup.contains(h)
    assert G.mul(h, cs.section(theta)) == g
    assert cs.coset_of(cs.section(theta)) == theta


def test_section_sends_h_to_identity():
    for cs in coset_spaces():
        assert cs.section(cs.identity_coset) == cs.group.identity


def test_bad_section_rejected():
    H = Multiples(Z, 2)
    with pytest.raises(CoinductError):
        CosetSpace(H, {0: 2})
    with pytest.raises(CoinductError):
        CosetSpace(H, {1: 2}).section(1)


def test_dihedral_z_factor_decompositions():
    cs = CosetSpace(z_factor(D))
    assert cs.index == 2
    assert decompose((5, 1), cs) == ((5, 0), (0, 1))
    assert decompose((5, 0), cs) == ((5, 0), (0, 0))


@pytest.mark.parametrize("cs", [c for c in coset_spaces() if c.index != float("inf")], ids=repr)
@settings(max_examples=200)
@given(data=st.data())
def test_coset_partition_reconstructs(cs, data):
    G = cs.group
    F = set(data.draw(st.lists(elements(G), max_size=12)))
    blocks = coset_partition(F, cs)
    back = {G.mul(h, cs.section(t)) for t, hs in blocks.items() for h in hs}
    assert back == F
    assert sum(len(b) for b in blocks.values()) == len(F)


def test_index_values():
    assert CosetSpace(Multiples(D, 1)).index == 2
    assert CosetSpace(Multiples(D, 3)).index == 6
    assert CosetSpace(Multiples(Z, 4)).index == 4
    assert CosetSpace(TrivialSubgroup(Z)).index == float("inf")


def test_centrality():
    assert acts_centrally(CosetSpace(Multiples(Z, 2)))
    assert acts_centrally(CosetSpace(ProductSubgroup(
        DirectProduct(Z, CyclicGroup(4)), WholeSubgroup(Z), TrivialSubgroup(CyclicGroup(4)))))
    # the translation subgroup of the dihedral group is normal but not central
    assert not acts_centrally(CosetSpace(Multiples(D, 1)))


def test_normal_core():
    core = normal_core(CosetSpace(Multiples(D, 1)))
    assert core.index == 2
    assert core.contains((7, 0)) and not core.contains((0, 1))
    assert normal_core(CosetSpace(Multiples(Z, 2))).index == 2
    core6 = normal_core(CosetSpace(Multiples(D, 3)))
    for g in ball(D, 6):
        assert core6.contains(g) == (g[1] == 0 and g[0] % 3 == 0)
    with pytest.raises(InfiniteIndexError):
        normal_core(CosetSpace(TrivialSubgroup(Z)))


@settings(max_examples=200)
@given(gs=st.lists(zz, min_size=1, max_size=4))
def test_neumann_witness_is_valid(gs):
    cs = CosetSpace(ProductSubgroup(ZZ, WholeSubgroup(Z), TrivialSubgroup(Z)))
    e = ZZ.identity
    ex = [(e, e, g) for g in gs]
    x = neumann_witness(ex, cs, 64)
    assert not excluded_by(x, ex, cs)
    for g in gs:
        assert x[1] != g[1]


def test_neumann_witness_errors():
    cs = CosetSpace(TrivialSubgroup(Z))
    ex = [(0, 0, g) for g in ball(Z, 3)]
    with pytest.raises(BudgetError):
        neumann_witness(ex, cs, 3)
    assert neumann_witness(ex, cs, 4) == 4
    with pytest.raises(CoinductError):
        neumann_witness([], CosetSpace(Multiples(Z, 2)), 3)


def test_exhaustive_small_coset_tables():
    cs = CosetSpace(Multiples(CyclicGroup(6), 3))
    assert sorted(cs.cosets()) == [0, 1, 2]
    for theta, g in itertools.product(cs.cosets(), range(6)):
        assert cs.act(theta, g) == (theta + g) % 3
