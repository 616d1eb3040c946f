import json

import pytest

from leftq import census, fixtures, verify
from leftq.table import LeftQuasigroup


@pytest.fixture(scope="module")
def corpus():
    return list(fixtures.all_fixtures().values())


def test_registry_covers_all_modules():
    modules = {c.module for c in verify.REGISTRY.values()}
    assert {"table", "perm", "congruence", "galois", "commutator", "maltsev", "extension"} <= modules


def test_resolve():
    assert verify.resolve("galois_connection") == ["galois_connection"]
    assert "p:dis_alpha1" in verify.resolve("galois")
    assert len(verify.resolve("all")) == len(verify.REGISTRY)
    with pytest.raises(KeyError):
        verify.resolve("nope")


@pytest.mark.parametrize("suite", ["table", "perm", "congruence", "galois", "maltsev"])
def test_suites_pass_on_fixtures(suite, corpus):
    for r in verify.run_suite(suite, corpus):
        assert r.verdict in ("pass", "skipped"), r.as_dict()


def test_extension_suite():
    specs = verify.random_specs(20, seed=5)
    for r in verify.run_suite("extension", [], specs):
        assert r.verdict == "pass", r.as_dict()


def test_monotone_failure_is_reported_and_replays(corpus):
    r = verify.run_check("commutator-monotone", corpus)
    assert r.verdict == "fail"
    record = json.loads(json.dumps(r.counterexample))
    assert verify.replay(record)


def test_skipped_when_nothing_in_scope():
    r = verify.run_check("nilpotent-are-latin", [LeftQuasigroup(2, [[1, 0], [1, 0]])])
    assert r.verdict == "skipped"


def test_unknown_on_budget(monkeypatch):
    monkeypatch.setattr(verify, "SEARCH_BUDGET", 1)
    hard = [Q for Q, _ in census.isomorphism_classes(3)]
    r = verify.run_check("o-onto-maltsev", hard)
    assert r.unknown > 0 and r.verdict in ("unknown", "fail")


def test_order3_census_passes_except_commutator_upward_closure():
    insts = [Q for Q, _ in census.isomorphism_classes(3, idempotent=True)]
    for cid in verify.REGISTRY:
        if verify.REGISTRY[cid].kind != "table":
            continue
        r = verify.run_check(cid, insts)
        assert r.verdict in ("pass", "skipped"), r.as_dict()
