import itertools

from hypothesis import given

from leftq import galois, perm
from leftq.congruence import Partition, congruence_lattice
from leftq.table import LeftQuasigroup, dihedral, direct_product, projection

from conftest import left_quasigroups


def dis_oracle(Q):
    """Dis(Q) as the subgroup of LMlt generated by all L_x L_y^-1, closed by enumeration."""
    G = galois.lmlt(Q)
    gens = [galois.displacement(Q, x, y) for x in Q.elements for y in Q.elements]
    return perm.normal_closure(G.gens, gens, degree=Q.n)


def test_dihedral3_groups():
    Q = dihedral(3)
    assert galois.lmlt(Q).size == 6
    assert galois.dis(Q).size == 3
    assert galois.is_semiregular(Q)


def test_projection_groups_trivial():
    Q = projection(3)
    assert galois.lmlt(Q).size == 1 and galois.dis(Q).size == 1
    assert galois.cayley_kernel(Q).is_top() and galois.is_cayley(Q)


@given(left_quasigroups(max_order=5))
def test_dis_normal_in_lmlt(Q):
    D, G = galois.dis(Q), galois.lmlt(Q)
    assert D.is_subgroup_of(G) and perm.is_normal_in(D, G)
    assert D == dis_oracle(Q)


@given(left_quasigroups(max_order=4))
def test_dis_sub_below_dis_ker(Q):
    for a in congruence_lattice(Q):
        assert galois.dis_sub(Q, a) <= galois.dis_ker(Q, a)
        assert galois.orbit_equivalence(Q, galois.dis_sub(Q, a)) <= a


@given(left_quasigroups(max_order=4))
def test_galois_connection(Q):
    assert galois.galois_verify(Q).ok


@given(left_quasigroups(max_order=4))
def test_correspondence(Q):
    for a in congruence_lattice(Q):
        assert galois.correspondence_verify(Q, a).ok


def test_correspondence_on_product():
    Q = direct_product(dihedral(3), projection(2))
    for a in congruence_lattice(Q):
        assert galois.correspondence_verify(Q, a).ok


@given(left_quasigroups(max_order=4))
def test_meet_and_join_formulas(Q):
    L = congruence_lattice(Q)
    for a, b in itertools.combinations_with_replacement(L, 2):
        assert galois.dis_ker(Q, a.meet(b)) == perm.intersection(galois.dis_ker(Q, a), galois.dis_ker(Q, b))
        assert galois.dis_sub(Q, a.join(b)) == perm.join(Q.n, galois.dis_sub(Q, a), galois.dis_sub(Q, b))


@given(left_quasigroups(max_order=4, idempotent=True))
def test_semiregular_idempotent_are_quandles(Q):
    from leftq.table import classify

    if galois.is_semiregular(Q):
        assert classify(Q).quandle


def test_sigma_of_semiregular_is_top():
    assert galois.sigma(dihedral(5)).is_top()


def test_pi_push():
    Q = dihedral(4)
    a = Partition.from_blocks(4, [[0, 2], [1, 3]])
    assert galois.pi_push(Q, a, Q.mul[0]) == (0, 1)
    assert galois.pi_image(Q, a, galois.lmlt(Q)).size == 1


def test_con_of_group_lambda():
    Q = LeftQuasigroup(3, [[0, 1, 2], [0, 1, 2], [1, 0, 2]])
    triv = perm.PermGroup.trivial(3)
    assert galois.con_of_group(Q, triv) == galois.cayley_kernel(Q)


def test_faithful_not_connected_by_dis():
    # lambda_Q = 0 <= O_Dis, yet Q / O_Dis is a nontrivial projection algebra
    from leftq.congruence import quotient
    from leftq.table import is_faithful

    Q = LeftQuasigroup(4, [[0, 1, 2, 3], [0, 1, 3, 2], [0, 3, 2, 1], [0, 2, 1, 3]])
    a = galois.orbit_equivalence(Q, galois.dis(Q))
    Qa, _ = quotient(Q, a)
    assert is_faithful(Q) and a.blocks == ((0,), (1, 2, 3))
    assert Qa == projection(2) and galois.cayley_kernel(Qa).is_top()
