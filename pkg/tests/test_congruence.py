import itertools

import pytest
from hypothesis import given
from sympy.utilities.iterables import multiset_partitions

from leftq.congruence import (
    Partition,
    UnionFind,
    congruence_generated,
    congruence_lattice,
    is_congruence,
    is_distributive,
    principal_congruence,
    quotient,
    quotient_congruence,
)
from leftq.errors import NotACongruence, OrderViolation
from leftq.table import dihedral, projection

from conftest import left_quasigroups


def brute_congruences(Q):
    """All equivalences compatible with both operations, by direct search."""
    out = set()
    for blocks in multiset_partitions(list(range(Q.n))):
        p = Partition.from_blocks(Q.n, blocks)
        ok = all(
            p.related(Q.mul[x][y], Q.mul[u][v]) and p.related(Q.ldiv[x][y], Q.ldiv[u][v])
            for x, u in p.pairs()
            for y, v in p.pairs()
        )
        if ok:
            out.add(p)
    return out


def test_partition_basics():
    p = Partition.from_blocks(4, [[3, 1], [0], [2]])
    assert p.blocks == ((0,), (1, 3), (2,))
    assert str(p) == "0 | 1 3 | 2"
    assert Partition.bottom(4) <= p <= Partition.top(4)
    q = Partition.from_pairs(4, [(0, 1)])
    assert p.meet(q).is_bottom()
    assert p.join(q).blocks == ((0, 1, 3), (2,))
    with pytest.raises(ValueError):
        Partition.from_blocks(3, [[0, 1]])


def test_union_find():
    uf = UnionFind(5)
    uf.union(0, 3)
    uf.union(3, 4)
    assert uf.find(4) == uf.find(0) != uf.find(1)


@given(left_quasigroups(max_order=4))
def test_lattice_matches_brute_force(Q):
    assert set(congruence_lattice(Q)) == brute_congruences(Q)


@given(left_quasigroups(max_order=4))
def test_lattice_closed_and_bounded(Q):
    L = congruence_lattice(Q)
    assert L.bottom.is_bottom() and L.top.is_top()
    for a, b in itertools.product(L, repeat=2):
        assert a.meet(b) in L
        assert congruence_generated(Q, a.pairs() + b.pairs()) in L


@given(left_quasigroups(max_order=4))
def test_principal_is_least(Q):
    L = congruence_lattice(Q)
    for a, b in itertools.combinations(range(Q.n), 2):
        c = principal_congruence(Q, a, b)
        assert c.related(a, b)
        assert all(c <= d for d in L if d.related(a, b))


def test_projection_lattice_is_partition_lattice():
    assert len(congruence_lattice(projection(4))) == 15


def test_dihedral_prime_is_simple():
    L = congruence_lattice(dihedral(5))
    assert len(L) == 2 and is_distributive(L)


def test_quotient():
    Q = dihedral(4)
    a = Partition.from_blocks(4, [[0, 2], [1, 3]])
    Qa, lab = quotient(Q, a)
    assert Qa == projection(2)
    assert lab == (0, 1, 0, 1)
    with pytest.raises(NotACongruence):
        quotient(Q, Partition.from_blocks(4, [[0, 1], [2, 3]]))


@given(left_quasigroups(max_order=4))
def test_second_isomorphism(Q):
    L = congruence_lattice(Q)
    for a in L:
        Qa, lab = quotient(Q, a)
        above = [quotient_congruence(a, b) for b in L if a <= b]
        assert set(above) == set(congruence_lattice(Qa))


def test_quotient_congruence_order():
    with pytest.raises(OrderViolation):
        quotient_congruence(Partition.top(3), Partition.bottom(3))


def test_is_congruence_rejects_ldiv_incompatible():
    # compatible with multiplication rows but not with left division
    Q = dihedral(3)
    assert not is_congruence(Q, Partition.from_blocks(3, [[0, 1], [2]]))
