"""Lemma checks over corpora of instances.

Every check is a function ``Q -> list of witnesses`` (empty when the
statement holds on ``Q``) together with a scope predicate.  Checks on
extension data take an :class:`ExtensionSpec` instead of a table.  A failing
check keeps the first counterexample as a JSON-able record that
:func:`replay` can rerun.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import galois, perm
from .commutator import (
    center_congruence,
    central_series,
    centralizes,
    classify_abelianness,
    commutator,
    is_central,
)
from .congruence import (
    Partition,
    congruence_lattice,
    is_congruence,
    principal_congruence,
    quotient,
    quotient_congruence,
)
from .errors import BudgetExhausted, CapExceeded, LeftqError
from .extension import (
    central_extension,
    idempotence_check,
    latin_check,
    random_affine_spec,
    random_extension_spec,
    spec_from_dict,
    spec_to_dict,
)
from .maltsev import (
    is_connected,
    is_connected_by_dis,
    is_superconnected,
    maltsev_search,
    nilpotent_latin_suite,
    prime_divisor_check,
)
from .table import (
    LeftQuasigroup,
    classify,
    has_fix_property,
    is_faithful,
    is_idempotent,
    is_latin,
    is_subuniverse,
    is_superfaithful,
    subalgebra,
    subuniverses,
)

VERDICTS = ("pass", "fail", "skipped", "unknown")

# Mal'tsev searches inside checks use this element cap; undecided instances count as unknown
SEARCH_BUDGET = 20_000


def _has_maltsev(Q):
    r = maltsev_search(Q, SEARCH_BUDGET)
    if r.status == "unknown":
        raise BudgetExhausted(f"Mal'tsev search undecided after {r.explored} vectors")
    return r.found


@dataclass(frozen=True)
class Check:
    id: str
    module: str
    scope: str
    applies: object  # Q -> bool
    run: object  # Q -> list of witnesses
    kind: str = "table"  # "table" or "spec"


@dataclass
class LemmaCheck:
    id: str
    scope: str
    verdict: str
    instances: int = 0
    in_scope: int = 0
    failures: int = 0
    unknown: int = 0
    reason: str | None = None
    counterexample: dict | None = None

    def as_dict(self):
        return {
            "id": self.id,
            "scope": self.scope,
            "verdict": self.verdict,
            "instances": self.instances,
            "in_scope": self.in_scope,
            "failures": self.failures,
            "unknown": self.unknown,
            "reason": self.reason,
            "counterexample": self.counterexample,
        }


REGISTRY: dict = {}


def check(id, module, scope, applies=lambda Q: True, kind="table"):
    def deco(fn):
        REGISTRY[id] = Check(id, module, scope, applies, fn, kind)
        return fn

    return deco


def _s(p):
    return str(p)


def _idem(Q):
    return is_idempotent(Q)


def _con(Q):
    return congruence_lattice(Q)


# ---------------------------------------------------------------------------
# table-core


@check("identity-axiom", "table", "all")
def _identity_axiom(Q):
    m, d = Q.mul, Q.ldiv
    return [
        {"x": x, "y": y}
        for x in Q.elements
        for y in Q.elements
        if m[x][d[x][y]] != y or d[x][m[x][y]] != y
    ]


@check("quandle-identities", "table", "quandles", lambda Q: classify(Q).quandle)
def _quandle_identities(Q):
    m = Q.mul
    out = [{"x": x} for x in Q.elements if m[x][x] != x]
    out += [
        {"x": x, "y": y, "z": z}
        for x, y, z in itertools.product(Q.elements, repeat=3)
        if m[x][m[y][z]] != m[m[x][y]][m[x][z]]
    ]
    return out


@check("superfaithful-idempotent", "table", "idempotent", _idem)
def _superfaithful_idempotent(Q):
    brute = is_superfaithful(Q, shortcut=False)
    m = Q.mul
    pairs = [(x, y) for x in Q.elements for y in Q.elements if x != y and m[x][y] == y and m[y][x] == x]
    return [] if brute == (not pairs) else [{"brute": brute, "pairs": pairs}]


@check("latin-fix-superfaithful", "table", "idempotent", _idem)
def _latin_fix_superfaithful(Q):
    lat, fix, sf = is_latin(Q), has_fix_property(Q), is_superfaithful(Q, shortcut=False)
    ok = (not lat or fix) and (not fix or sf)
    return [] if ok else [{"latin": lat, "fix": fix, "superfaithful": sf}]


@check("subuniverses-closed", "table", "all")
def _subuniverses_closed(Q):
    subs = subuniverses(Q)
    out = [{"subset": sorted(S)} for S in subs if not is_subuniverse(Q, S)]
    # brute force: every closed nonempty subset is reported
    for r in range(1, Q.n + 1):
        for S in itertools.combinations(range(Q.n), r):
            if is_subuniverse(Q, S) and frozenset(S) not in subs:
                out.append({"missing": list(S)})
    return out


@check("latin-superconnected", "table", "latin", is_latin)
def _latin_superconnected(Q):
    return [] if is_superconnected(Q) else [{"superconnected": False}]


# ---------------------------------------------------------------------------
# perm


def _groups(Q):
    return [("LMlt", galois.lmlt(Q)), ("Dis", galois.dis(Q))]


@check("membership-scan", "perm", "all")
def _membership_scan(Q):
    out = []
    if Q.n <= 6:
        probes = list(itertools.permutations(range(Q.n)))
    else:
        rng = random.Random(0)
        probes = [tuple(rng.sample(range(Q.n), Q.n)) for _ in range(5000)]
    for name, G in _groups(Q):
        elems = set(G.elements)
        for g in probes + sorted(elems)[:5000]:
            if (g in G) != (g in elems):
                out.append({"group": name, "g": list(g)})
    return out


@check("orbit-stabilizer", "perm", "all")
def _orbit_stabilizer(Q):
    out = []
    for name, G in _groups(Q):
        for x in Q.elements:
            if len(G.orbit(x)) * perm.point_stabilizer(G, x).size != G.size:
                out.append({"group": name, "x": x})
    return out


@check("normal-closure-invariant", "perm", "all")
def _normal_closure_invariant(Q):
    D = galois.dis(Q)
    return [
        {"generator": x, "g": list(g)}
        for x in Q.elements
        for g in D.gens
        if perm.conjugate(Q.L(x), g) not in D
    ]


@check("regular-predicates", "perm", "all")
def _regular_predicates(Q):
    out = []
    for name, G in _groups(Q):
        p = perm.group_predicates(G)
        a = p.semiregular and p.transitive
        c = p.transitive and G.size == Q.n
        if not (a == p.regular == c):
            out.append({"group": name, "semiregular": p.semiregular, "transitive": p.transitive})
    return out


# ---------------------------------------------------------------------------
# congruence


@check("principal-minimal", "congruence", "all")
def _principal_minimal(Q):
    L = _con(Q)
    out = []
    for a, b in itertools.combinations(range(Q.n), 2):
        p = principal_congruence(Q, a, b)
        if p not in L:
            out.append({"pair": [a, b], "principal": _s(p)})
        for c in L:
            if c.related(a, b) and not p <= c:
                out.append({"pair": [a, b], "above": _s(c)})
    return out


@check("lattice-closed", "congruence", "all")
def _lattice_closed(Q):
    L = _con(Q)
    out = []
    for a in L:
        if not is_congruence(Q, a):
            out.append({"not_congruence": _s(a)})
        for b in L:
            if a.meet(b) not in L or a.join(b) not in L:
                out.append({"a": _s(a), "b": _s(b)})
    return out


def _bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


@check("projection-bell", "congruence", "projection algebras", lambda Q: classify(Q).projection)
def _projection_bell(Q):
    k = len(_con(Q))
    return [] if k == _bell(Q.n) else [{"congruences": k, "bell": _bell(Q.n)}]


@check("second-isomorphism", "congruence", "all")
def _second_iso(Q):
    from .census import find_isomorphism

    L = _con(Q)
    out = []
    for a in L:
        Qa, _ = quotient(Q, a)
        for b in L:
            if a <= b:
                lhs, _ = quotient(Qa, quotient_congruence(a, b))
                rhs, _ = quotient(Q, b)
                # both are labelled by blocks in order of least element
                if lhs != rhs and find_isomorphism(lhs, rhs) is None:
                    out.append({"a": _s(a), "b": _s(b)})
    return out


@check("idempotent-blocks", "congruence", "idempotent", _idem)
def _idempotent_blocks(Q):
    return [{"alpha": _s(a), "block": list(b)} for a in _con(Q) for b in a.blocks if not is_subuniverse(Q, b)]


# ---------------------------------------------------------------------------
# galois


@check("galois_connection", "galois", "all")
def _galois_connection(Q):
    return list(galois.galois_verify(Q).violations)


@check("correspondence", "galois", "all")
def _correspondence(Q):
    return [{"alpha": _s(a), "violation": v} for a in _con(Q) for v in galois.correspondence_verify(Q, a).violations]


@check("dis-chain", "galois", "all")
def _dis_chain(Q):
    out = []
    D = galois.dis(Q)
    for a in _con(Q):
        lower, upper = galois.dis_sub(Q, a), galois.dis_ker(Q, a)
        inter = D
        for x in Q.elements:
            inter = perm.intersection(inter, galois.block_stabilizer(Q, a, x))
        if not lower <= upper or inter != upper:
            out.append({"alpha": _s(a)})
    return out


@check("p:dis_alpha1", "galois", "all")
def _dis_alpha1(Q):
    out = []
    L = _con(Q)
    for a, b in itertools.combinations_with_replacement(L, 2):
        m, j = a.meet(b), a.join(b)
        if galois.dis_ker(Q, m) != perm.intersection(galois.dis_ker(Q, a), galois.dis_ker(Q, b)):
            out.append({"a": _s(a), "b": _s(b), "part": "meet"})
        if galois.dis_sub(Q, j) != perm.join(Q.n, galois.dis_sub(Q, a), galois.dis_sub(Q, b)):
            out.append({"a": _s(a), "b": _s(b), "part": "join"})
    return out


@check("lambda-remark-i", "galois", "all")
def _lambda_i(Q):
    lam = galois.cayley_kernel(Q)
    return [{"alpha": _s(a)} for a in _con(Q) if (a <= lam) != galois.dis_sub(Q, a).is_trivial()]


@check("lambda-remark-iii", "galois", "all")
def _lambda_iii(Q):
    out = []
    for a in _con(Q):
        Qa, _ = quotient(Q, a)
        lhs = galois.cayley_kernel(Qa)
        rhs = quotient_congruence(a, galois.con_of_group(Q, galois.dis_ker(Q, a)))
        if lhs != rhs:
            out.append({"alpha": _s(a), "lambda_quotient": _s(lhs), "con_dis_ker": _s(rhs)})
    return out


def _blocks_connected(Q, a):
    return all(is_connected(subalgebra(Q, b)[0]) for b in a.blocks)


@check("blocks-connected", "galois", "idempotent", _idem)
def _blocks_connected_check(Q):
    out = []
    for a in _con(Q):
        if _blocks_connected(Q, a):
            o1 = galois.orbit_equivalence(Q, galois.dis_sub(Q, a))
            o2 = galois.orbit_equivalence(Q, galois.dis_ker(Q, a))
            if not (o1 == a == o2):
                out.append({"alpha": _s(a), "O_dis_sub": _s(o1), "O_dis_ker": _s(o2)})
    return out


@check("factor-of-lambda", "galois", "all")
def _factor_of_lambda(Q):
    lam = galois.cayley_kernel(Q)
    faithful = [a for a in _con(Q) if is_faithful(quotient(Q, a)[0])]
    out = [{"alpha": _s(a)} for a in faithful if not lam <= a]
    for a, b in itertools.combinations(faithful, 2):
        if not is_faithful(quotient(Q, a.meet(b))[0]):
            out.append({"a": _s(a), "b": _s(b), "part": "meet"})
    return out


@check("below-lambda", "galois", "all")
def _below_lambda(Q):
    out = []
    for a in _con(Q):
        D = galois.dis_ker(Q, a)
        b = galois.orbit_equivalence(Q, D)
        Qb, _ = quotient(Q, b)
        if D != galois.dis_ker(Q, b) or not quotient_congruence(b, a) <= galois.cayley_kernel(Qb):
            out.append({"alpha": _s(a), "beta": _s(b)})
    return out


@check("strongly-abelian-sublattice", "galois", "all")
def _strongly_abelian(Q):
    lam = galois.cayley_kernel(Q)
    below = [a for a in _con(Q) if a <= lam]
    return [
        {"a": _s(a), "b": _s(b)}
        for a, b in itertools.combinations(below, 2)
        if not a.meet(b) <= lam or not a.join(b) <= lam
    ]


_semiregular = galois.is_semiregular


@check("semiregular-factor", "galois", "all")
def _semiregular_factor(Q):
    out = []
    for a in _con(Q):
        Qa, _ = quotient(Q, a)
        lhs = _semiregular(Qa)
        D = galois.dis_ker(Q, a)
        rhs = all(D == galois.block_stabilizer(Q, a, x) for x in Q.elements)
        if lhs != rhs:
            out.append({"alpha": _s(a), "quotient_semiregular": lhs})
    return out


def _semiregular_pool(Q):
    pool = galois.admissible_pool(Q, include=("dis_sub", "dis_ker", "center"))
    return [t for t in pool if galois.in_norm_prime(Q, t.group) and perm.group_predicates(t.group).semiregular]


@check("semiregular-groups", "galois", "faithful", is_faithful)
def _semiregular_groups(Q):
    out = []
    for t in _semiregular_pool(Q):
        N = t.group
        a = galois.orbit_equivalence(Q, N)
        if a != galois.con_of_group(Q, N) or galois.dis_sub(Q, a) != N:
            out.append({"N": t.label(), "part": "orbits"})
            continue
        for x in Q.elements:
            if {galois.displacement(Q, y, x) for y in a.block_of(x)} != set(N.elements):
                out.append({"N": t.label(), "x": x})
    return out


@check("semiregular-groups-0", "galois", "all")
def _semiregular_groups_0(Q):
    out = []
    D = galois.dis(Q)
    for t in _semiregular_pool(Q):
        N = t.group
        a = galois.orbit_equivalence(Q, N)
        Dk = galois.dis_ker(Q, a)
        for x in Q.elements:
            S = galois.block_stabilizer(Q, a, x)
            Dx = perm.point_stabilizer(D, x)
            Dkx = perm.point_stabilizer(Dk, x)
            ok = (
                N <= S
                and perm.intersection(N, Dx).size == 1
                and N.size * Dx.size == S.size
                and N <= Dk
                and N.size * Dkx.size == Dk.size
            )
            if not ok:
                out.append({"N": t.label(), "x": x})
    return out


@check("semiregular-idempotent-quandle", "galois", "semiregular idempotent",
       lambda Q: is_idempotent(Q) and _semiregular(Q))
def _semiregular_idempotent_quandle(Q):
    return [] if classify(Q).quandle else [{"quandle": False}]


@check("semiregular-decomposition", "galois", "idempotent", _idem)
def _semiregular_decomposition(Q):
    out = []
    for b in galois.sigma(Q).blocks:
        if not is_subuniverse(Q, b):
            out.append({"block": list(b), "part": "subuniverse"})
            continue
        S, _ = subalgebra(Q, b)
        if not _semiregular(S) or not classify(S).quandle:
            out.append({"block": list(b), "semiregular": _semiregular(S), "quandle": classify(S).quandle})
    return out


@check("sigma-decomposition", "galois", "connected idempotent", lambda Q: _idem(Q) and is_connected(Q))
def _sigma_decomposition(Q):
    out = []
    D = galois.dis(Q)
    pool = galois.admissible_pool(Q, include=("dis_sub", "dis_ker", "lmlt_ker", "center"))
    for t in pool:
        N = t.group
        if not galois.is_admissible(Q, N):
            continue
        sig = galois.sigma(Q, N)
        for x in Q.elements:
            Nx = perm.point_stabilizer(N, x)
            tilde = perm.normalizer(D, Nx)
            if set(tilde.orbit(x)) != set(sig.block_of(x)):
                out.append({"N": t.label(), "x": x})
    return out


# ---------------------------------------------------------------------------
# commutator


@check("commutator-monotone", "commutator", "all")
def _commutator_monotone(Q):
    L = _con(Q)
    out = []
    for a, b in itertools.product(L, repeat=2):
        holds = [d for d in L if centralizes(Q, a, b, d)]
        for d in holds:
            for e in L:
                if d <= e and not centralizes(Q, a, b, e):
                    out.append({"alpha": _s(a), "beta": _s(b), "delta": _s(d), "delta_up": _s(e)})
    return out


@check("commutator-minimality", "commutator", "all")
def _commutator_minimality(Q):
    L = _con(Q)
    out = []
    for a, b in itertools.product(L, repeat=2):
        c = commutator(Q, a, b)
        for d in L:
            if centralizes(Q, a, b, d) != (c <= d):
                out.append({"alpha": _s(a), "beta": _s(b), "delta": _s(d), "commutator": _s(c)})
    return out


@check("from-cp", "commutator", "all")
def _from_cp(Q):
    out = []
    bot = Partition.bottom(Q.n)
    for a, b in itertools.product(_con(Q), repeat=2):
        if not centralizes(Q, a, b, bot):
            continue
        A, B = galois.dis_sub(Q, a), galois.dis_sub(Q, b)
        commute = all(perm.compose(g, h) == perm.compose(h, g) for g in A.gens for h in B.gens)
        if not commute or not a <= galois.sigma(Q, B, check_normal=False):
            out.append({"alpha": _s(a), "beta": _s(b), "commute": commute})
    return out


@check("corollary-from-cp", "commutator", "all")
def _corollary_from_cp(Q):
    zeta = center_congruence(Q)
    Z = perm.center(galois.dis(Q))
    sig = galois.sigma(Q)
    return [
        {"alpha": _s(a)}
        for a in _con(Q)
        if a <= zeta and not (galois.dis_sub(Q, a) <= Z and a <= sig)
    ]


@check("abelian-corollary", "commutator", "abelian", lambda Q: center_congruence(Q).is_top())
def _abelian_corollary(Q):
    c = classify(Q)
    out = []
    if c.idempotent and not c.quandle:
        out.append({"part": "idempotent abelian not a quandle"})
    if c.faithful and not c.latin:
        out.append({"part": "faithful abelian not latin"})
    return out


def _central_nontrivial(Q):
    return [a for a in _con(Q) if is_central(Q, a)]


@check("central-orbits", "commutator", "connected by Dis", is_connected_by_dis)
def _central_orbits(Q):
    out = []
    D = galois.dis(Q)
    for a in _central_nontrivial(Q):
        N = galois.dis_sub(Q, a)
        b = galois.orbit_equivalence(Q, N)
        Db = galois.dis_ker(Q, b)
        k = len(b.blocks)
        for x in Q.elements:
            S = galois.block_stabilizer(Q, b, x)
            if not perm.internal_direct_product_check(S, N, perm.point_stabilizer(D, x)):
                out.append({"alpha": _s(a), "x": x, "part": "direct product"})
            if len(b.block_of(x)) ** k % Db.size:
                out.append({"alpha": _s(a), "x": x, "part": "divisibility", "order": Db.size})
        if not perm.is_abelian(Db):
            out.append({"alpha": _s(a), "part": "Dis^beta abelian"})
    return out


def _faithful_connected_by_dis(Q):
    return is_faithful(Q) and is_connected_by_dis(Q)


@check("strucure_of_K_N", "commutator", "faithful, connected by Dis", _faithful_connected_by_dis)
def _structure_k_n(Q):
    out = []
    D = galois.dis(Q)
    for a in _central_nontrivial(Q):
        N = galois.dis_sub(Q, a)
        Da = galois.dis_ker(Q, a)
        if not (galois.orbit_equivalence(Q, N) == a == galois.con_of_group(Q, N)):
            out.append({"alpha": _s(a), "part": "(i)"})
        for x in Q.elements:
            S = galois.block_stabilizer(Q, a, x)
            if not perm.internal_direct_product_check(S, N, perm.point_stabilizer(D, x)):
                out.append({"alpha": _s(a), "x": x, "part": "(ii)"})
            if len(a.block_of(x)) ** len(a.blocks) % Da.size:
                out.append({"alpha": _s(a), "x": x, "part": "(iii) divisibility"})
        if not perm.is_abelian(Da):
            out.append({"alpha": _s(a), "part": "(iii) abelian"})
    return out


@check("strucure_of_K_N_2", "commutator", "connected faithful idempotent",
       lambda Q: _idem(Q) and is_faithful(Q) and is_connected(Q))
def _structure_k_n_2(Q):
    out = []
    for a in _central_nontrivial(Q):
        for b in a.blocks:
            S, _ = subalgebra(Q, b)
            c = classify(S)
            if not (c.latin and c.quandle):
                out.append({"alpha": _s(a), "block": list(b), "part": "(i)"})
        Qa, _ = quotient(Q, a)
        for name, pred in (
            ("superfaithful", lambda X: is_superfaithful(X, shortcut=False)),
            ("superconnected", is_superconnected),
            ("fix", has_fix_property),
        ):
            if pred(Qa) and not pred(Q):
                out.append({"alpha": _s(a), "part": "(ii) " + name})
    return out


@check("solvable", "commutator", "superconnected idempotent nilpotent",
       lambda Q: _idem(Q) and central_series(Q).nilpotent and is_superconnected(Q))
def _solvable(Q):
    n = central_series(Q).nilpotency_length
    ds = perm.derived_series(galois.dis(Q))
    ok = ds[-1].size == 1 and len(ds) - 1 <= n
    return [] if ok else [{"nilpotency_length": n, "derived_length": len(ds) - 1}]


@check("divisors", "commutator", "superconnected idempotent nilpotent",
       lambda Q: _idem(Q) and central_series(Q).nilpotent and is_superconnected(Q))
def _divisors(Q):
    r = prime_divisor_check(Q, "superconnected")
    return [] if r.holds else [r.as_dict()]


@check("divisors-maltsev", "maltsev", "nilpotent with a Mal'tsev term",
       lambda Q: central_series(Q).nilpotent and _has_maltsev(Q))
def _divisors_maltsev(Q):
    r = prime_divisor_check(Q, "maltsev", SEARCH_BUDGET)
    return [] if r.holds else [r.as_dict()]


# ---------------------------------------------------------------------------
# maltsev


@check("o-onto-maltsev", "maltsev", "Mal'tsev term found", _has_maltsev)
def _o_onto_maltsev(Q):
    out = []
    for a in _con(Q):
        o1 = galois.orbit_equivalence(Q, galois.dis_sub(Q, a))
        o2 = galois.orbit_equivalence(Q, galois.dis_ker(Q, a))
        if not (o1 == o2 == a):
            out.append({"alpha": _s(a), "O_dis_sub": _s(o1), "O_dis_ker": _s(o2)})
    return out


@check("o-onto-super", "maltsev", "superconnected idempotent", lambda Q: _idem(Q) and is_superconnected(Q))
def _o_onto_super(Q):
    out = []
    for a in _con(Q):
        ds, dk = galois.dis_sub(Q, a), galois.dis_ker(Q, a)
        vals = [
            galois.orbit_equivalence(Q, ds),
            galois.orbit_equivalence(Q, dk),
            a,
            galois.con_of_group(Q, ds),
            galois.con_of_group(Q, dk),
        ]
        if len(set(vals)) != 1:
            out.append({"alpha": _s(a), "values": [_s(v) for v in vals]})
    return out


@check("nilpotent-are-latin", "maltsev", "idempotent nilpotent with a Mal'tsev term",
       lambda Q: _idem(Q) and central_series(Q).nilpotent and _has_maltsev(Q))
def _nilpotent_are_latin(Q):
    c = classify(Q)
    out = []
    if not c.latin:
        out.append({"part": "not latin"})
    if center_congruence(Q).is_top() and not c.quandle:
        out.append({"part": "abelian but not a quandle"})
    return out


@check("nilpotent-latin", "maltsev", "idempotent nilpotent",
       lambda Q: _idem(Q) and central_series(Q).nilpotent)
def _nilpotent_latin(Q):
    r = nilpotent_latin_suite(Q, SEARCH_BUDGET)
    return [] if r.equivalence_holds else [r.as_dict()]


@check("proj-sub", "maltsev", "connected idempotent with the Fix property",
       lambda Q: _idem(Q) and is_connected(Q) and has_fix_property(Q))
def _proj_sub(Q):
    out = []
    for a in _central_nontrivial(Q):
        if not has_fix_property(quotient(Q, a)[0]):
            out.append({"alpha": _s(a)})
    return out


# ---------------------------------------------------------------------------
# extension (these take ExtensionSpec instances)


@check("extension-kernel", "extension", "all specs", kind="spec")
def _extension_kernel(spec):
    E, ker = central_extension(spec)
    m = spec.group.order
    out = []
    if any(len(b) != m for b in ker.blocks) or not is_congruence(E, ker):
        out.append({"part": "kernel"})
    Eq, lab = quotient(E, ker)
    # blocks are ordered by least element, which is x * |A|
    if Eq != spec.base:
        out.append({"part": "projection is not onto the base"})
    return out


@check("affine-abelian", "extension", "affine specs", lambda s: s.base.n == 1, kind="spec")
def _affine_abelian(spec):
    E, _ = central_extension(spec)
    r = classify_abelianness(E)
    return [] if r.abelian else [{"center": r.center.to_list()}]


@check("remark-latin", "extension", "all specs", kind="spec")
def _remark_latin(spec):
    try:
        idempotence_check(spec)
        latin_check(spec)
    except LeftqError as e:
        return [{"error": str(e)}]
    return []


@check("extension-central", "extension", "all specs", kind="spec")
def _extension_central(spec):
    E, ker = central_extension(spec)
    return [] if is_central(E, ker) else [{"part": "kernel not central"}]


# ---------------------------------------------------------------------------
# running


def random_specs(count, seed=0):
    """Seeded mix of affine specs and extensions of small bases (total order <= 12)."""
    from .census import sample

    rng = random.Random(seed)
    bases = sample(2, 4, seed, idempotent=False) + sample(3, 4, seed, idempotent=True)
    specs = []
    for i in range(count):
        if i % 2 == 0:
            specs.append(random_affine_spec(rng))
        else:
            base = rng.choice(bases)
            specs.append(random_extension_spec(rng, base, max_group=4, idempotent=rng.random() < 0.5))
    return specs


def resolve(suite) -> list:
    """Check ids for a suite name: a check id, a module name, or ``all``."""
    if suite == "all":
        return list(REGISTRY)
    if suite in REGISTRY:
        return [suite]
    ids = [c.id for c in REGISTRY.values() if c.module == suite]
    if not ids:
        raise KeyError(suite)
    return ids


def _counterexample(chk, inst, witnesses):
    data = spec_to_dict(inst) if chk.kind == "spec" else {"n": inst.n, "mul": [list(r) for r in inst.mul]}
    return {"check": chk.id, "kind": chk.kind, "instance": data, "witnesses": witnesses[:5]}


def run_check(check_id, instances, specs=()) -> LemmaCheck:
    chk = REGISTRY[check_id]
    corpus = list(specs) if chk.kind == "spec" else list(instances)
    rep = LemmaCheck(chk.id, chk.scope, "pass", instances=len(corpus))
    for inst in corpus:
        try:
            if not chk.applies(inst):
                continue
            rep.in_scope += 1
            witnesses = chk.run(inst)
        except (BudgetExhausted, CapExceeded) as e:
            rep.unknown += 1
            rep.reason = str(e)
            continue
        if witnesses:
            rep.failures += 1
            if rep.counterexample is None:
                rep.counterexample = _counterexample(chk, inst, witnesses)
    if rep.failures:
        rep.verdict = "fail"
    elif rep.unknown:
        rep.verdict = "unknown"
    elif rep.in_scope == 0:
        rep.verdict = "skipped"
        rep.reason = "no instance in scope" if corpus else "empty corpus"
    return rep


def run_suite(suite, instances, specs=()) -> list:
    return [run_check(i, instances, specs) for i in resolve(suite)]


def replay(counterexample) -> list:
    """Rerun the check named in a counterexample record; returns its witnesses."""
    chk = REGISTRY[counterexample["check"]]
    data = counterexample["instance"]
    if chk.kind == "spec":
        inst = spec_from_dict(data)
    else:
        inst = LeftQuasigroup(data["n"], data["mul"])
    return chk.run(inst) if chk.applies(inst) else []
