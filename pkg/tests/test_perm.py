import itertools

from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from leftq import perm
from leftq.perm import PermGroup, StabChain


def perms(n):
    return st.permutations(range(n)).map(tuple)


def gensets(n, k=3):
    return st.lists(perms(n), min_size=1, max_size=k)


def sympy_group(gens):
    return PermutationGroup([Permutation(list(g)) for g in gens])


@given(st.integers(2, 7).flatmap(gensets))
def test_order_against_sympy(gens):
    G = PermGroup(len(gens[0]), gens)
    assert G.size == sympy_group(gens).order()


@given(st.integers(2, 7).flatmap(gensets))
def test_stabilizer_chain_order(gens):
    n = len(gens[0])
    assert StabChain(n, gens).order == PermGroup(n, gens).size


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(gensets(n), perms(n))))
def test_chain_membership(data):
    gens, g = data
    n = len(g)
    G = PermGroup(n, gens)
    assert StabChain(n, gens).contains(g) == (g in G.elements)


def test_chain_path_for_large_groups():
    n = 10
    gens = [perm.from_cycles(n, (0, 1)), tuple(list(range(1, n)) + [0])]
    G = PermGroup(n, gens, cap=1000)
    assert not G.enumerated
    assert G.size == 3628800
    assert perm.from_cycles(n, (2, 7, 5)) in G
    A = PermGroup(n, [perm.from_cycles(n, (0, 1, 2)), perm.from_cycles(n, tuple(range(1, n)))], cap=1000)
    assert perm.from_cycles(n, (0, 1)) not in A


@given(st.integers(2, 6).flatmap(gensets))
def test_orbit_stabilizer(gens):
    G = PermGroup(len(gens[0]), gens)
    for x in range(G.degree):
        assert len(G.orbit(x)) * perm.point_stabilizer(G, x).size == G.size


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(gensets(n), gensets(n, 2))))
def test_normal_closure(data):
    amb, seed = data
    n = len(amb[0])
    N = perm.normal_closure(amb, seed, degree=n)
    assert all(perm.conjugate(g, s) in N for s in N.gens for g in amb)
    assert perm.is_normal_in(N, PermGroup(n, list(amb) + list(seed)))
    H = sympy_group(amb + seed).normal_closure(sympy_group(seed))
    assert N.size == H.order()


def test_cycle_notation_and_inverse():
    g = perm.from_cycles(5, (0, 1, 2), (3, 4))
    assert perm.cycle_notation(g) == "(0 1 2)(3 4)"
    assert perm.is_identity(perm.compose(g, perm.inverse(g)))


def test_predicates_regular_and_semiregular():
    c = tuple(list(range(1, 6)) + [0])
    p = perm.group_predicates(PermGroup(6, [c]))
    assert p.regular and p.abelian and p.nilpotent
    s3 = PermGroup(3, [perm.from_cycles(3, (0, 1)), perm.from_cycles(3, (0, 1, 2))])
    p = perm.group_predicates(s3)
    assert p.transitive and not p.semiregular and p.solvable and not p.nilpotent
    assert p.derived_length == 2
    semi = PermGroup(4, [perm.from_cycles(4, (0, 1), (2, 3))])
    assert perm.group_predicates(semi).semiregular and not perm.group_predicates(semi).transitive


def test_center_and_series():
    d4 = PermGroup(4, [perm.from_cycles(4, (0, 1, 2, 3)), perm.from_cycles(4, (0, 2))])
    assert d4.size == 8 and perm.center(d4).size == 2
    assert len(perm.lower_central_series(d4)) == 3


def test_internal_direct_product():
    v4 = PermGroup(4, [perm.from_cycles(4, (0, 1)), perm.from_cycles(4, (2, 3))])
    a = PermGroup(4, [perm.from_cycles(4, (0, 1))])
    b = PermGroup(4, [perm.from_cycles(4, (2, 3))])
    assert perm.internal_direct_product_check(v4, a, b)
    assert not perm.internal_direct_product_check(v4, a, a)


def test_exhaustive_membership_small():
    # every element of S_4 is found in S_4 and only even ones in A_4
    a4 = PermGroup(4, [perm.from_cycles(4, (0, 1, 2)), perm.from_cycles(4, (1, 2, 3))])
    for g in itertools.permutations(range(4)):
        assert (g in a4) == Permutation(list(g)).is_even
