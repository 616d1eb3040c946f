"""Displacement groups and the operators between congruences and subgroups.

Naming: ``dis_sub(Q, a)`` is the displacement group relative to ``a`` (normal
closure of ``L_x L_y^-1`` with ``x a y``), ``dis_ker(Q, a)`` the subgroup of
``Dis(Q)`` moving every point inside its ``a``-block, ``lmlt_ker(Q, a)`` the
same inside ``LMlt(Q)`` (the kernel of the induced map to ``LMlt(Q/a)``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import perm
from .congruence import (
    Partition,
    congruence_lattice,
    is_congruence,
    quotient,
    quotient_congruence,
)
from .errors import NotNormal, NotWellDefined
from .perm import PermGroup, compose, inverse
from .table import LeftQuasigroup


@dataclass(frozen=True)
class GroupTag:
    kind: str  # LMlt, Dis, Dis_sub, Dis_ker, LMlt_ker, BlockStab, Center, Custom
    group: PermGroup = field(compare=False)
    alpha: Partition | None = None
    point: int | None = None

    def label(self):
        s = self.kind
        if self.alpha is not None:
            s += f"[{self.alpha}]"
        if self.point is not None:
            s += f"@{self.point}"
        return s


def displacement(Q, x, y):
    return compose(Q.mul[x], inverse(Q.mul[y]))


@lru_cache(maxsize=4096)
def lmlt(Q: LeftQuasigroup) -> PermGroup:
    return PermGroup(Q.n, Q.mul)


@lru_cache(maxsize=4096)
def dis(Q: LeftQuasigroup) -> PermGroup:
    return dis_sub(Q, Partition.top(Q.n))


@lru_cache(maxsize=16384)
def dis_sub(Q: LeftQuasigroup, alpha: Partition) -> PermGroup:
    # x a y for all pairs in a block follows from displacements to a fixed member
    seed = [displacement(Q, x, b[0]) for b in alpha.blocks for x in b[1:]]
    return perm.normal_closure(Q.mul, seed, degree=Q.n)


@lru_cache(maxsize=16384)
def dis_ker(Q: LeftQuasigroup, alpha: Partition) -> PermGroup:
    lab = alpha.labels
    return perm.filter_subgroup(dis(Q), lambda h: all(lab[h[x]] == lab[x] for x in Q.elements))


@lru_cache(maxsize=16384)
def lmlt_ker(Q: LeftQuasigroup, alpha: Partition) -> PermGroup:
    lab = alpha.labels
    return perm.filter_subgroup(lmlt(Q), lambda h: all(lab[h[x]] == lab[x] for x in Q.elements))


def block_stabilizer(Q, alpha, x) -> PermGroup:
    """``{h in Dis(Q) : h(x) alpha x}``."""
    lab = alpha.labels
    return perm.filter_subgroup(dis(Q), lambda h: lab[h[x]] == lab[x])


def pi_push(Q, alpha: Partition, h) -> tuple:
    """The permutation of ``alpha``-blocks induced by ``h``."""
    lab = alpha.labels
    img = [None] * len(alpha.blocks)
    for x in Q.elements:
        b, c = lab[x], lab[h[x]]
        if img[b] is None:
            img[b] = c
        elif img[b] != c:
            raise NotWellDefined(f"{perm.cycle_notation(h)} does not respect {alpha}")
    if not perm.is_permutation(img):
        raise NotWellDefined(f"{perm.cycle_notation(h)} does not permute the blocks of {alpha}")
    return tuple(img)


def pi_image(Q, alpha, N) -> PermGroup:
    return PermGroup(len(alpha.blocks), [pi_push(Q, alpha, h) for h in N.gens])


def pi_preimage(Q, alpha, K, within=None) -> PermGroup:
    """``{h in within : pi(h) in K}``; ``within`` defaults to LMlt(Q)."""
    within = lmlt(Q) if within is None else within
    return perm.filter_subgroup(within, lambda h: pi_push(Q, alpha, h) in K)


def orbit_equivalence(Q, N) -> Partition:
    if N.degree != Q.n:
        raise ValueError(f"group degree {N.degree} differs from order {Q.n}")
    return perm.orbits(N)


def con_of_group(Q, N) -> Partition:
    """``x ~ y`` iff ``L_x L_y^-1`` lies in ``N``."""
    n = Q.n
    labels = list(range(n))
    for x in range(n):
        if labels[x] != x:
            continue
        for y in range(x + 1, n):
            if labels[y] == y and displacement(Q, y, x) in N:
                labels[y] = x
    # L_y L_x^-1 in N is an equivalence, so comparing with block leaders suffices
    return Partition.from_labels(labels)


def cayley_kernel(Q) -> Partition:
    return Partition.from_key(Q.n, lambda x: Q.mul[x])


def is_cayley(Q) -> bool:
    return is_congruence(Q, cayley_kernel(Q))


def sigma(Q, N=None, check_normal=True) -> Partition:
    """Points are related when their stabilizers in ``N`` coincide.

    ``N`` defaults to Dis(Q), giving sigma_Q.
    """
    N = dis(Q) if N is None else N
    if check_normal and not perm.is_normal_in(N, lmlt(Q)):
        raise NotNormal(repr(N))
    stabs = [frozenset(h for h in N.elements if h[x] == x) for x in Q.elements]
    return Partition.from_key(Q.n, lambda x: stabs[x])


def is_admissible(Q, N) -> bool:
    """``N`` normal in LMlt(Q) with ``Dis_{O_N} <= N``."""
    if not N.is_subgroup_of(lmlt(Q)) or not perm.is_normal_in(N, lmlt(Q)):
        return False
    return dis_sub(Q, orbit_equivalence(Q, N)).is_subgroup_of(N)


def in_norm_prime(Q, N) -> bool:
    return N.is_subgroup_of(dis(Q)) and is_admissible(Q, N)


def _group_key(G):
    return (G.degree, G.elements)


def admissible_pool(Q, con=None, include=("dis_sub", "dis_ker", "lmlt_ker", "center")):
    """Operator images over Con(Q) plus Z(Dis(Q)), deduplicated, as GroupTags."""
    con = congruence_lattice(Q) if con is None else con
    tags = []
    for a in con:
        if "dis_sub" in include:
            tags.append(GroupTag("Dis_sub", dis_sub(Q, a), a))
        if "dis_ker" in include:
            tags.append(GroupTag("Dis_ker", dis_ker(Q, a), a))
        if "lmlt_ker" in include:
            tags.append(GroupTag("LMlt_ker", lmlt_ker(Q, a), a))
    if "center" in include:
        tags.append(GroupTag("Center", perm.center(dis(Q))))
    seen, pool = set(), []
    for t in tags:
        k = _group_key(t.group)
        if k not in seen:
            seen.add(k)
            pool.append(t)
    return pool


@dataclass
class VerifyReport:
    checks: int = 0
    violations: list = field(default_factory=list)
    pool_size: int = 0
    pool_excluded: int = 0

    @property
    def ok(self):
        return not self.violations

    def check(self, cond, msg):
        self.checks += 1
        if not cond:
            self.violations.append(msg)

    def as_dict(self):
        return {
            "ok": self.ok,
            "checks": self.checks,
            "violations": list(self.violations),
            "pool_size": self.pool_size,
            "pool_excluded": self.pool_excluded,
        }


def galois_verify(Q) -> VerifyReport:
    """Check the monotone Galois connection between O_* and Dis^* on the pool."""
    rep = VerifyReport()
    con = congruence_lattice(Q)
    candidates = admissible_pool(Q, con, include=("dis_sub", "dis_ker", "center"))
    pool = [t for t in candidates if in_norm_prime(Q, t.group)]
    rep.pool_size = len(pool)
    rep.pool_excluded = len(candidates) - len(pool)
    orbs = {id(t): orbit_equivalence(Q, t.group) for t in pool}
    for t in pool:
        rep.check(is_congruence(Q, orbs[id(t)]), f"O_{t.label()} is not a congruence")
    for a in con:
        D = dis_ker(Q, a)
        for t in pool:
            lhs = orbs[id(t)] <= a
            rhs = t.group.is_subgroup_of(D)
            rep.check(lhs == rhs, f"O_N <= a iff N <= Dis^a fails for N={t.label()}, a={a}")
        # O_{Dis_a} <= O_{Dis^a} <= O_{LMlt^a} <= a <= Con_{Dis_a} <= Con_{Dis^a}
        chain = [
            orbit_equivalence(Q, dis_sub(Q, a)),
            orbit_equivalence(Q, D),
            orbit_equivalence(Q, lmlt_ker(Q, a)),
            a,
            con_of_group(Q, dis_sub(Q, a)),
            con_of_group(Q, D),
        ]
        for i in range(len(chain) - 1):
            rep.check(chain[i] <= chain[i + 1], f"closure chain breaks at step {i} for a={a}")
    for a in con:
        for b in con:
            if a <= b:
                rep.check(
                    dis_ker(Q, a).is_subgroup_of(dis_ker(Q, b)),
                    f"Dis^* not monotone on {a} <= {b}",
                )
    for s in pool:
        for t in pool:
            if s.group.is_subgroup_of(t.group):
                rep.check(orbs[id(s)] <= orbs[id(t)], f"O_* not monotone on {s.label()} <= {t.label()}")
    return rep


def correspondence_verify(Q, alpha) -> VerifyReport:
    """Compare operator images through ``pi_alpha`` and the pool correspondence."""
    rep = VerifyReport()
    con = congruence_lattice(Q)
    Qa, _ = quotient(Q, alpha)
    con_a = congruence_lattice(Qa)
    n_a = Qa.n
    for b in con:
        if not alpha <= b:
            continue
        ba = quotient_congruence(alpha, b)
        rep.check(pi_image(Q, alpha, dis_sub(Q, b)) == dis_sub(Qa, ba), f"pi(Dis_b) != Dis_(b/a), b={b}")
        rep.check(pi_image(Q, alpha, dis_ker(Q, b)) == dis_ker(Qa, ba), f"pi(Dis^b) != Dis^(b/a), b={b}")
        rep.check(pi_image(Q, alpha, lmlt_ker(Q, b)) == lmlt_ker(Qa, ba), f"pi(LMlt^b) != LMlt^(b/a), b={b}")
    rep.check(pi_image(Q, alpha, lmlt(Q)) == lmlt(Qa), "pi(LMlt(Q)) != LMlt(Q/a)")
    rep.check(pi_image(Q, alpha, dis(Q)) == dis(Qa), "pi(Dis(Q)) != Dis(Q/a)")
    rep.check(dis_ker(Q, alpha) == perm.intersection(dis(Q), lmlt_ker(Q, alpha)), "Dis^a != Dis cap LMlt^a")

    ker = lmlt_ker(Q, alpha)
    kerd = dis_ker(Q, alpha)
    upper = [t for t in admissible_pool(Q, con) if ker.is_subgroup_of(t.group) and is_admissible(Q, t.group)]
    pool_a = [t for t in admissible_pool(Qa, con_a) if is_admissible(Qa, t.group)]
    rep.pool_size = len(upper) + len(pool_a)
    images = []
    for t in upper:
        K = pi_image(Q, alpha, t.group)
        images.append(K)
        rep.check(is_admissible(Qa, K), f"pi({t.label()}) not admissible in Q/a")
        rep.check(pi_preimage(Q, alpha, K) == t.group, f"preimage of pi({t.label()}) differs")
    for t in pool_a:
        H = pi_preimage(Q, alpha, t.group)
        rep.check(ker.is_subgroup_of(H), f"preimage of {t.label()} misses LMlt^a")
        rep.check(is_admissible(Q, H), f"preimage of {t.label()} not admissible")
        rep.check(pi_image(Q, alpha, H) == t.group, f"pi(preimage({t.label()})) differs")
    for i, s in enumerate(upper):
        for j, t in enumerate(upper[: i + 1]):
            meet = perm.intersection(s.group, t.group)
            rep.check(
                pi_image(Q, alpha, meet) == perm.intersection(images[i], images[j]),
                f"pi does not preserve meet of {s.label()}, {t.label()}",
            )
            jn = perm.join(Q.n, s.group, t.group)
            rep.check(
                pi_image(Q, alpha, jn) == perm.join(n_a, images[i], images[j]),
                f"pi does not preserve join of {s.label()}, {t.label()}",
            )
    # restriction below the displacement groups
    D, Da = dis(Q), dis(Qa)
    for t in upper:
        if t.group.is_subgroup_of(D) and kerd.is_subgroup_of(t.group):
            K = pi_image(Q, alpha, t.group)
            rep.check(in_norm_prime(Qa, K), f"pi({t.label()}) not in Norm'(Q/a)")
            rep.check(pi_preimage(Q, alpha, K, within=D) == t.group, f"Dis-preimage of pi({t.label()}) differs")
    for t in pool_a:
        if t.group.is_subgroup_of(Da):
            H = pi_preimage(Q, alpha, t.group, within=D)
            rep.check(kerd.is_subgroup_of(H), f"Dis-preimage of {t.label()} misses Dis^a")
            rep.check(in_norm_prime(Q, H), f"Dis-preimage of {t.label()} not in Norm'")
            rep.check(pi_image(Q, alpha, H) == t.group, f"pi(Dis-preimage({t.label()})) differs")
    return rep


def galois_records(Q) -> list:
    """Per-congruence summary used in JSON reports."""
    records = []
    for a in congruence_lattice(Q):
        ds, dk = dis_sub(Q, a), dis_ker(Q, a)
        records.append({
            "alpha": a.to_list(),
            "dis_sub_order": ds.size,
            "dis_ker_order": dk.size,
            "lmlt_ker_order": lmlt_ker(Q, a).size,
            "o_dis_sub": orbit_equivalence(Q, ds).to_list(),
            "o_dis_ker": orbit_equivalence(Q, dk).to_list(),
            "con_dis_sub": con_of_group(Q, ds).to_list(),
            "admissible_pool_checks": {
                "dis_sub": is_admissible(Q, ds),
                "dis_ker": is_admissible(Q, dk),
            },
        })
    return records


def is_semiregular(Q) -> bool:
    """Dis(Q) has trivial point stabilizers."""
    return perm.group_predicates(dis(Q)).semiregular
