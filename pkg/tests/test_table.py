import json

import pytest
from hypothesis import given

from leftq.errors import CapExceeded, MalformedInput, NotLeftQuasigroup
from leftq.table import (
    LeftQuasigroup,
    classify,
    dihedral,
    direct_product,
    from_dict,
    generated_subalgebra,
    is_latin,
    is_superfaithful,
    parse,
    projection,
    relabel,
    subuniverses,
    to_dict,
    to_lq,
)

from conftest import left_quasigroups


def test_parse_lq_with_comments():
    Q = parse("# P_2\n2\n0 1  # first row\n0 1\n")
    assert Q == projection(2)


def test_parse_json():
    Q = parse(json.dumps({"n": 3, "mul": [[0, 2, 1], [2, 1, 0], [1, 0, 2]]}))
    assert Q == dihedral(3)


@pytest.mark.parametrize("text, exc", [
    ("", MalformedInput),
    ("2\n0 1\n", MalformedInput),
    ("2\n0 1\n0 2\n", MalformedInput),
    ("2\n0 1\n0 0\n", NotLeftQuasigroup),
    ("x\n", MalformedInput),
    ("2 2\n0 1\n0 1\n", MalformedInput),
    ('{"n": 2}', MalformedInput),
    ("{bad json", MalformedInput),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


@given(left_quasigroups(max_order=6))
def test_round_trip(Q):
    assert parse(to_lq(Q, "comment")) == Q
    assert from_dict(json.loads(json.dumps(to_dict(Q)))) == Q


@given(left_quasigroups(max_order=6))
def test_left_division_identities(Q):
    for x in Q.elements:
        for y in Q.elements:
            assert Q.mul[x][Q.ldiv[x][y]] == y
            assert Q.ldiv[x][Q.mul[x][y]] == y


def test_projection_classification():
    c = classify(projection(3))
    assert c.projection and c.quandle and c.idempotent
    assert not c.latin and not c.faithful
    assert c.fix_sets == (frozenset(range(3)),) * 3


def test_dihedral_classification():
    c = classify(dihedral(3))
    assert c.quandle and c.latin and c.faithful and c.superfaithful and c.fix_property
    assert not classify(dihedral(4)).latin


def test_non_rack():
    Q = LeftQuasigroup(3, [[1, 0, 2], [0, 1, 2], [0, 1, 2]])
    assert not classify(Q).rack


def test_subuniverses_of_projection():
    # every nonempty subset of a projection algebra is closed
    assert len(subuniverses(projection(3))) == 7


def test_generated_subalgebra():
    assert generated_subalgebra(dihedral(3), {0, 1}) == frozenset(range(3))
    assert generated_subalgebra(projection(3), {0, 1}) == frozenset({0, 1})


@given(left_quasigroups(max_order=4, idempotent=True))
def test_superfaithful_shortcut_matches_brute_force(Q):
    assert is_superfaithful(Q) == is_superfaithful(Q, shortcut=False)


@given(left_quasigroups(max_order=4, idempotent=True))
def test_idempotent_subsets_generate_subalgebras(Q):
    for S in subuniverses(Q):
        assert generated_subalgebra(Q, S) == S


@given(left_quasigroups(max_order=4))
def test_relabel_preserves_properties(Q):
    perm = tuple(reversed(range(Q.n)))
    assert classify(relabel(Q, perm)).as_dict().keys() == classify(Q).as_dict().keys()
    c1, c2 = classify(Q), classify(relabel(Q, perm))
    for k in ("idempotent", "rack", "quandle", "latin", "faithful", "projection"):
        assert getattr(c1, k) == getattr(c2, k)


def test_direct_product():
    P = direct_product(dihedral(3), projection(2))
    assert P.n == 6 and classify(P).quandle and not is_latin(P)
    with pytest.raises(CapExceeded):
        direct_product(dihedral(5), dihedral(3))
