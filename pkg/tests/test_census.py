import itertools

import pytest

from leftq import census
from leftq.errors import CapExceeded, MalformedInput
from leftq.table import LeftQuasigroup, classify, relabel


@pytest.mark.parametrize("n, idem, total", [(1, False, 1), (2, False, 4), (3, False, 216), (3, True, 8), (4, True, 1296)])
def test_counts(n, idem, total):
    assert census.count(n, idem) == total
    assert len(census.table_array(n, idem)) == total


def brute_classes(n, idem):
    """Classes by orbit enumeration under all relabelings."""
    seen, classes = set(), 0
    for Q in census.tables(n, idem):
        if Q.mul in seen:
            continue
        classes += 1
        for p in itertools.permutations(range(n)):
            seen.add(relabel(Q, p).mul)
    return classes


@pytest.mark.parametrize("n, idem", [(2, False), (3, False), (3, True)])
def test_class_counts_against_brute_force(n, idem):
    assert len(census.isomorphism_classes(n, idem)) == brute_classes(n, idem)


def test_class_sizes_sum():
    cls = census.isomorphism_classes(4, idempotent=True)
    assert len(cls) == 72
    assert sum(s for _, s in cls) == 1296


def test_canonical_form_is_invariant(rng):
    from conftest import random_table

    for _ in range(20):
        Q = random_table(rng, 4)
        p = list(range(4))
        rng.shuffle(p)
        R = relabel(Q, tuple(p))
        assert census.canonical_form(Q) == census.canonical_form(R)
        iso = census.find_isomorphism(Q, R)
        assert iso is not None and relabel(Q, iso) == R


def test_non_isomorphic():
    assert not census.are_isomorphic(LeftQuasigroup(2, [[0, 1], [0, 1]]), LeftQuasigroup(2, [[1, 0], [1, 0]]))


def test_sample_deterministic():
    a = census.sample(5, 20, seed=7, idempotent=True)
    assert a == census.sample(5, 20, seed=7, idempotent=True)
    assert all(classify(Q).idempotent for Q in a)


def test_caps():
    with pytest.raises(CapExceeded):
        list(census.census_instances(census.CensusConfig(5)))
    with pytest.raises(CapExceeded):
        census.sample(6, 1)


def test_filters():
    assert census.parse_filters("idempotent,not-quandle") == (("idempotent", True), ("quandle", False))
    with pytest.raises(MalformedInput):
        census.parse_filters("bogus")
    r = census.run_census(census.CensusConfig(3, filters=census.parse_filters("semiregular,idempotent,not-quandle")))
    assert r.total == 216 and not r.matched


def test_census_order2_json():
    d = census.run_census(census.CensusConfig(2)).as_dict()
    assert d["total"] == 4 and len(d["instances"]) == 4


def test_nonclosure_witness():
    (w,) = census.mine_nonclosure_witness(max_order=4, routes=("census",))
    assert w.table.n == 4 and census.is_nonclosure_witness(w.table)
