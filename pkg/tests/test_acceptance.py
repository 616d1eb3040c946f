"""Acceptance criteria 1-11.

Each test prints one ``C<k> PASS|FAIL: ...`` line (visible without ``-s``).
The exhaustive corpora make this module take several minutes.
"""
import itertools
import random
import time

import pytest

from leftq import census, fixtures, galois, perm, verify
from leftq.commutator import (
    central_series,
    centralizes,
    center_congruence,
    commutator,
    commutator_by_terms,
    is_central,
    term_catalog,
)
from leftq.congruence import congruence_lattice
from leftq.extension import central_extension, random_affine_spec
from leftq.maltsev import is_connected, is_superconnected, maltsev_search, nilpotent_latin_suite, prime_divisor_check
from leftq.table import LeftQuasigroup, classify, direct_product, dihedral, is_faithful, parse, projection, to_lq

BUDGET = verify.SEARCH_BUDGET


def report(capsys, label, ok, detail):
    with capsys.disabled():
        print(f"\n{label} {'PASS' if ok else 'FAIL'}: {detail}")


def idempotent_census(max_order=4):
    return [Q for n in range(1, max_order + 1) for Q in census.tables(n, idempotent=True)]


@pytest.fixture(scope="module")
def order5_samples():
    return census.sample(5, 1000, seed=0, idempotent=True)


@pytest.fixture(scope="module")
def nilpotent_classes():
    """Nilpotent representatives of every isomorphism class of order <= 4."""
    return [Q for n in range(1, 5) for Q, _ in census.isomorphism_classes(n) if central_series(Q).nilpotent]


# ---------------------------------------------------------------------------


def test_c1_axioms_and_parsing(capsys):
    t = time.perf_counter()
    bad = []
    fx = fixtures.all_fixtures()
    for name, Q in fx.items():
        if parse(to_lq(Q)) != Q or parse(fixtures.text(name)) != Q:
            bad.append((name, "round trip"))
        for x, y in itertools.product(Q.elements, repeat=2):
            if Q.mul[x][Q.ldiv[x][y]] != y or Q.ldiv[x][Q.mul[x][y]] != y:
                bad.append((name, x, y))
    dt = time.perf_counter() - t
    ok = not bad and dt < 1.0
    report(capsys, "C1", ok, f"{len(fx)} fixtures, {len(bad)} violations, {dt:.3f} s")
    assert ok, bad


def test_c2_galois_connection(capsys):
    corpus = list(census.tables(3)) + list(census.tables(4, idempotent=True))
    checks = violations = 0
    first = None
    for Q in corpus:
        r = galois.galois_verify(Q)
        checks += r.checks
        if r.violations:
            violations += len(r.violations)
            first = first or (Q, r.violations[0])
    report(capsys, "C2", violations == 0, f"{len(corpus)} tables, {checks} comparisons, {violations} violations")
    assert violations == 0, first


def test_c3_dis_meet_join(capsys):
    corpus = idempotent_census(4)
    r = verify.run_check("p:dis_alpha1", corpus)
    pairs = sum(len(congruence_lattice(Q)) * (len(congruence_lattice(Q)) + 1) // 2 for Q in corpus)
    report(capsys, "C3", r.verdict == "pass", f"{len(corpus)} tables, {pairs} congruence pairs, {r.failures} failing")
    assert r.verdict == "pass", r.counterexample


def test_c4_pi_images_and_correspondence(capsys):
    rng = random.Random(0)
    all4 = census.table_array(4)
    picked = []
    while len(picked) < 50:
        Q = LeftQuasigroup(4, all4[rng.randrange(len(all4))].tolist())
        if len(congruence_lattice(Q)) > 2:
            picked.append(Q)
    corpus = [direct_product(dihedral(3), projection(2))] + picked
    checks = violations = 0
    first = None
    for Q in corpus:
        for a in congruence_lattice(Q):
            r = galois.correspondence_verify(Q, a)
            checks += r.checks
            if r.violations:
                violations += len(r.violations)
                first = first or (Q, a, r.violations[0])
    report(capsys, "C4", violations == 0, f"{len(corpus)} instances, {checks} checks, {violations} violations")
    assert violations == 0, first


def test_c5_commutator_oracle(capsys):
    # (a) term-enumeration oracle on every table of order <= 3
    oracle_bad, incomplete, pairs = [], 0, 0
    for n in range(1, 4):
        for Q in census.tables(n):
            cat = term_catalog(Q)
            incomplete += not cat.complete
            L = congruence_lattice(Q)
            for a, b in itertools.product(L, repeat=2):
                pairs += 1
                if commutator_by_terms(Q, a, b, cat) != commutator(Q, a, b, verify=False):
                    oracle_bad.append((Q, a, b))
    # (b) C(a,b;d) <=> [a,b] <= d with the matrix check, one table per isomorphism class
    both_bad, first, tables = 0, None, 0
    for n in range(1, 5):
        for Q, _ in census.isomorphism_classes(n):
            tables += 1
            L = congruence_lattice(Q)
            hit = False
            for a, b in itertools.product(L, repeat=2):
                c = commutator(Q, a, b, verify=False)
                for d in L:
                    if centralizes(Q, a, b, d) != (c <= d):
                        hit = True
                        first = first or {"table": [list(r) for r in Q.mul], "alpha": str(a), "beta": str(b),
                                          "delta": str(d), "commutator": str(c)}
            both_bad += hit
    ok = not oracle_bad and both_bad == 0
    report(capsys, "C5", ok,
           f"oracle: {pairs} pairs, {len(oracle_bad)} discrepancies ({incomplete} catalogs sampled at depth 3-4); "
           f"matrix both ways: {both_bad} of {tables} classes disagree, first {first}")
    assert not oracle_bad, oracle_bad[:3]
    assert both_bad == 0, first


def test_c6_affine_abelian(capsys):
    rng = random.Random(0)
    failures = []
    for _ in range(100):
        spec = random_affine_spec(rng, max_order=8)
        E, _ = central_extension(spec)
        if not center_congruence(E).is_top():
            failures.append(spec)
    report(capsys, "C6", not failures, f"100 seeded Aff(A,g,f,c) with |A| <= 8, {len(failures)} non-abelian")
    assert not failures


def test_c7_semiregular_quandles(capsys):
    corpus = idempotent_census(4)
    semireg = [Q for Q in corpus if galois.is_semiregular(Q)]
    bad = [Q for Q in semireg if not classify(Q).quandle]
    r = verify.run_check("semiregular-decomposition", corpus)
    ok = not bad and r.verdict == "pass"
    report(capsys, "C7", ok, f"{len(corpus)} idempotent tables, {len(semireg)} semiregular, {len(bad)} non-quandles; "
                             f"sigma blocks: {r.in_scope} checked, {r.failures} failing")
    assert not bad
    assert r.verdict == "pass", r.counterexample


def test_c8_nilpotent_maltsev_latin(capsys, order5_samples):
    corpus = idempotent_census(4) + order5_samples
    in_scope = unknown = 0
    bad = []
    for Q in corpus:
        if not central_series(Q).nilpotent:
            continue
        m = maltsev_search(Q, BUDGET)
        if m.status == "unknown":
            unknown += 1
            continue
        if not m.found:
            continue
        in_scope += 1
        c = classify(Q)
        if not c.latin or (center_congruence(Q).is_top() and not c.quandle):
            bad.append(Q)
    report(capsys, "C8", not bad, f"{len(corpus)} idempotent tables (non-idempotent ones are out of scope), "
                                  f"{in_scope} nilpotent with a term, {unknown} unknown excluded, {len(bad)} not latin")
    assert not bad


def test_c9_nilpotent_latin_and_divisors(capsys, order5_samples, nilpotent_classes):
    idem = [Q for Q in idempotent_census(4) + order5_samples if central_series(Q).nilpotent]
    suite_bad, suite_unknown = [], 0
    div_scope, div_bad = 0, []
    for Q in idem:
        r = nilpotent_latin_suite(Q, BUDGET)
        suite_unknown += r.maltsev == "unknown"
        if not r.equivalence_holds:
            suite_bad.append((Q, r.as_dict()))
        if is_superconnected(Q):
            div_scope += 1
            if not prime_divisor_check(Q, "superconnected").holds:
                div_bad.append(Q)
    m_scope = m_unknown = 0
    for Q in nilpotent_classes:
        s = maltsev_search(Q, BUDGET).status
        if s == "unknown":
            m_unknown += 1
        elif s == "found":
            m_scope += 1
            if not prime_divisor_check(Q, "maltsev", BUDGET).holds:
                div_bad.append(Q)
    ok = not suite_bad and not div_bad
    report(capsys, "C9", ok,
           f"four conditions on {len(idem)} nilpotent idempotent tables ({suite_unknown} unknown), "
           f"{len(suite_bad)} disagreements; divisors on {div_scope} superconnected + {m_scope} Mal'tsev "
           f"({m_unknown} unknown), {len(div_bad)} failing")
    assert not suite_bad, suite_bad[:2]
    assert not div_bad


def test_c10_nonclosure_witness(capsys):
    t = time.perf_counter()
    found = census.mine_nonclosure_witness(max_order=12)
    dt = time.perf_counter() - t
    replayed = []
    for w in found:
        stored = fixtures.load(f"nonclosure_{w.route}")
        replayed.append(stored == w.table and census.is_nonclosure_witness(stored))
    ok = bool(found) and all(replayed) and dt < 600
    detail = ", ".join(f"{w.route}: order {w.table.n}, quotient by {w.alpha}" for w in found)
    report(capsys, "C10", ok, f"{detail}; fixtures replay {replayed}; {dt:.1f} s")
    assert ok


def test_c11_central_structure(capsys):
    corpus = [Q for Q in idempotent_census(4) if is_faithful(Q) and is_connected(Q)]
    in_scope = nontrivial = 0
    bad = []
    for Q in corpus:
        D = galois.dis(Q)
        central = [a for a in congruence_lattice(Q) if is_central(Q, a)]
        in_scope += 1
        nontrivial += any(not a.is_bottom() for a in central)
        for a in central:
            N, Da = galois.dis_sub(Q, a), galois.dis_ker(Q, a)
            for x in Q.elements:
                if not perm.internal_direct_product_check(galois.block_stabilizer(Q, a, x), N,
                                                          perm.point_stabilizer(D, x)):
                    bad.append((Q, str(a), x))
            if not perm.is_abelian(Da):
                bad.append((Q, str(a), "Dis^alpha"))
    report(capsys, "C11", not bad, f"{in_scope} connected faithful idempotent tables, {nontrivial} with a "
                                   f"nontrivial central congruence, {len(bad)} failures")
    assert in_scope and not bad, bad[:3]
