import itertools

import pytest
from hypothesis import given

from leftq.commutator import (
    center_congruence,
    central_series,
    centralizes,
    centralizes_by_terms,
    classify_abelianness,
    commutator,
    commutator_by_terms,
    derived_series,
    is_central,
    tc_matrices,
    term_catalog,
)
from leftq.congruence import Partition, congruence_lattice
from leftq.extension import cyclic_affine
from leftq.table import LeftQuasigroup, dihedral, projection

from conftest import left_quasigroups

# abelian, yet C(1, 1; 0|1|23) fails: centrality is not upward closed in delta
NON_MONOTONE = LeftQuasigroup(4, [[0, 1, 2, 3], [0, 1, 2, 3], [1, 0, 3, 2], [1, 0, 3, 2]])


def test_dihedral3_abelian():
    r = classify_abelianness(dihedral(3))
    assert r.abelian and r.nilpotent and r.nilpotency_length == 1


def test_projection_abelian():
    assert center_congruence(projection(3)).is_top()


def test_nilpotent_class_2():
    Q = LeftQuasigroup(3, [[0, 1, 2], [0, 1, 2], [1, 0, 2]])
    s = central_series(Q)
    assert s.nilpotent and s.nilpotency_length == 2
    assert not center_congruence(Q).is_top()


def test_dihedral4_is_affine_hence_abelian():
    assert center_congruence(dihedral(4)).is_top()


def test_non_nilpotent():
    Q = LeftQuasigroup(3, [[0, 1, 2], [0, 1, 2], [0, 2, 1]])
    r = classify_abelianness(Q)
    assert not r.nilpotent


@pytest.mark.parametrize("n, g, f", [(4, 2, 3), (5, 2, 4), (8, 3, 5), (6, 1, 5)])
def test_affine_abelian(n, g, f):
    assert center_congruence(cyclic_affine(n, g, f, 1)).is_top()


def test_matrix_generators_present():
    Q = dihedral(3)
    top = Partition.top(3)
    M = tc_matrices(Q, top, top)
    assert all((a, a, b, b) in M and (a, b, a, b) in M for a in range(3) for b in range(3))


@given(left_quasigroups(max_order=3))
def test_commutator_is_least_centralizing(Q):
    L = congruence_lattice(Q)
    for a, b in itertools.product(L, repeat=2):
        c = commutator(Q, a, b)
        assert centralizes(Q, a, b, c)
        assert all(c <= d for d in L if centralizes(Q, a, b, d))


@given(left_quasigroups(max_order=3))
def test_commutator_below_meet_and_monotone(Q):
    L = congruence_lattice(Q)
    for a, b in itertools.product(L, repeat=2):
        c = commutator(Q, a, b)
        assert c <= a.meet(b)
        for a2 in L:
            if a <= a2:
                assert c <= commutator(Q, a2, b)


@given(left_quasigroups(max_order=3))
def test_term_oracle_agrees(Q):
    cat = term_catalog(Q, max_depth=3)
    top = Partition.top(Q.n)
    assert commutator_by_terms(Q, top, top, cat) == commutator(Q, top, top)


def test_upward_closure_fails_on_known_instance():
    Q = NON_MONOTONE
    top, bot = Partition.top(4), Partition.bottom(4)
    delta = Partition.from_blocks(4, [[0], [1], [2, 3]])
    assert commutator(Q, top, top) == bot
    assert not centralizes(Q, top, top, delta)
    # the term (z1*z2)*x separates the rows
    ok, witness = centralizes_by_terms(Q, top, top, delta)
    assert not ok and witness is not None


def test_derived_series_of_abelian():
    assert derived_series(dihedral(3))[-1].is_bottom()


def test_is_central():
    Q = dihedral(4)
    assert is_central(Q, center_congruence(Q))
