"""Connectivity, Mal'tsev term search and the nilpotent/latin suites."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import galois, perm
from .commutator import central_series
from .congruence import congruence_lattice, is_distributive, quotient
from .errors import ConsistencyError, PreconditionFailed
from .table import (
    classify,
    has_fix_property,
    is_idempotent,
    is_latin,
    is_projection,
    subalgebra,
    subuniverses,
)

MALTSEV_BUDGET = 10**6


def is_connected(Q) -> bool:
    return len(galois.lmlt(Q).orbit(0)) == Q.n


def is_connected_by_dis(Q) -> bool:
    return len(galois.dis(Q).orbit(0)) == Q.n


def is_superconnected(Q) -> bool:
    return all(is_connected(subalgebra(Q, S)[0]) for S in subuniverses(Q))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaltsevResult:
    status: str  # "found" | "notfound" | "unknown"
    witness: tuple | None = None  # m(a, b, c) at index a*n*n + b*n + c
    term: str | None = None
    explored: int = 0
    reason: str | None = None

    @property
    def found(self):
        return self.status == "found"


def _term_string(parents, i):
    kind = parents[i]
    if kind[0] == "var":
        return "xyz"[kind[1]]
    op, a, b = kind
    return f"({_term_string(parents, a)}{op}{_term_string(parents, b)})"


def _evaluate(Q, parents, i, cache):
    if i in cache:
        return cache[i]
    kind = parents[i]
    n = Q.n
    if kind[0] == "var":
        grid = np.array(list(itertools.product(range(n), repeat=3)), dtype=np.intp)
        val = grid[:, kind[1]]
    else:
        op, a, b = kind
        table = Q.mul_array if op == "*" else Q.ldiv_array
        val = table[_evaluate(Q, parents, a, cache), _evaluate(Q, parents, b, cache)]
    cache[i] = val
    return val


def projection_section(Q):
    """A subalgebra or quotient with at least two elements that is a projection algebra.

    Every term acts as a projection there, and no projection satisfies the
    Mal'tsev identities on two or more elements.
    """
    for S in sorted(subuniverses(Q), key=lambda s: (len(s), sorted(s))):
        if len(S) > 1 and is_projection(subalgebra(Q, S)[0]):
            return "projection subalgebra " + " ".join(map(str, sorted(S)))
    for a in congruence_lattice(Q):
        if len(a.blocks) > 1 and is_projection(quotient(Q, a)[0]):
            return f"projection quotient by {a}"
    return None


def _maltsev_coords(n):
    return sorted({(a, b, b) for a in range(n) for b in range(n)} | {(b, b, a) for a in range(n) for b in range(n)})


def local_obstruction(Q):
    """Two coordinates of the search on which no term can agree with the target.

    Closes the three projections restricted to a pair of coordinates inside
    ``Q^2``; a global Mal'tsev term would give the target pair there.
    """
    n = Q.n
    mul, ldiv = Q.mul, Q.ldiv
    coords = _maltsev_coords(n)
    goal = [t[0] if t[1] == t[2] else t[2] for t in coords]
    for i, u in enumerate(coords):
        for j in range(i + 1, len(coords)):
            v = coords[j]
            want = (goal[i], goal[j])
            seen = {(u[k], v[k]) for k in range(3)}
            work = list(seen)
            while work and want not in seen:
                p = work.pop()
                for q in list(seen):
                    for a, b in ((p, q), (q, p)):
                        for op in (mul, ldiv):
                            r = (op[a[0]][b[0]], op[a[1]][b[1]])
                            if r not in seen:
                                seen.add(r)
                                work.append(r)
            if want not in seen:
                return f"coordinates {u} and {v}"
    return None


def _void(rows):
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.shape[1]))).ravel()


_CHUNK_CELLS = 1 << 22


@lru_cache(maxsize=4096)
def maltsev_search(Q, budget: int = MALTSEV_BUDGET) -> MaltsevResult:
    """Look for a term ``m`` with ``m(a,b,b) = a = m(b,b,a)`` in the clone of ``Q``.

    Terms are generated as value vectors on the triples ``(a,b,b)`` and
    ``(b,b,a)`` only, which is all the two identities can see.  The search is
    exact when the closure finishes inside ``budget`` vectors.
    """
    n = Q.n
    section = projection_section(Q)
    if section is not None:
        return MaltsevResult("notfound", reason=section)
    local = local_obstruction(Q)
    if local is not None:
        return MaltsevResult("notfound", reason="no local term on " + local)
    coords = _maltsev_coords(n)
    m = len(coords)
    target = np.array([t[0] if t[1] == t[2] else t[2] for t in coords], dtype=np.int8)
    gens = np.array([[t[k] for t in coords] for k in range(3)], dtype=np.int8)
    _, first = np.unique(_void(gens), return_index=True)
    first = np.sort(first)
    vectors = gens[first]
    parents = [("var", int(k)) for k in first]
    known = np.unique(_void(vectors))
    tkey = _void(target[None, :])
    ops = (("*", Q.mul_array.astype(np.int8)), ("\\", Q.ldiv_array.astype(np.int8)))
    lo = 0
    hit = np.flatnonzero(_void(vectors) == tkey[0])
    while not len(hit) and lo < len(vectors):
        everything = vectors
        k = len(everything)
        step = max(1, _CHUNK_CELLS // (k * m))
        rows, pars = [], []
        pending = known
        for code, (_, table) in enumerate(ops):
            for s in range(lo, k, step):
                part = everything[s:s + step]
                for left_new in (True, False):
                    if left_new:
                        res = table[part[:, None, :], everything[None, :, :]].reshape(-1, m)
                    else:
                        res = table[everything[:, None, :], part[None, :, :]].transpose(1, 0, 2).reshape(-1, m)
                    v = _void(res)
                    _, idx = np.unique(v, return_index=True)
                    idx = idx[~np.isin(v[idx], pending)]
                    if not len(idx):
                        continue
                    i, j = s + idx // k, idx % k
                    rows.append(res[idx])
                    l, r = (i, j) if left_new else (j, i)
                    pars.append(np.stack([np.full(len(idx), code), l, r], axis=1))
                    pending = np.unique(np.concatenate([pending, v[idx]]))
                    if (v[idx] == tkey[0]).any():
                        break
                    if len(pending) > budget:
                        return MaltsevResult("unknown", explored=len(pending))
                else:
                    continue
                break
            else:
                continue
            break
        lo = k
        if not rows:
            break
        rows = np.concatenate(rows)
        pars = np.concatenate(pars)
        vectors = np.concatenate([vectors, rows])
        parents.extend((ops[c][0], int(a), int(b)) for c, a, b in pars)
        known = pending
        hit = np.flatnonzero(_void(vectors) == tkey[0])
    if not len(hit):
        return MaltsevResult("notfound", explored=len(vectors))
    hit = int(hit[0])
    witness = tuple(int(v) for v in _evaluate(Q, parents, hit, {}))
    for a in range(n):
        for b in range(n):
            if witness[a * n * n + b * n + b] != a or witness[b * n * n + b * n + a] != a:
                raise ConsistencyError("reconstructed term is not a Mal'tsev operation")
    return MaltsevResult("found", witness, _term_string(parents, hit), len(vectors))


# ---------------------------------------------------------------------------


@dataclass
class NilpotentLatinReport:
    connected_fix: bool
    superconnected: bool
    maltsev: str
    latin: bool
    equivalence_holds: bool

    def as_dict(self):
        return {
            "connected": self.connected_fix,
            "superconnected": self.superconnected,
            "maltsev": self.maltsev,
            "latin": self.latin,
            "equivalence_holds": self.equivalence_holds,
        }


def nilpotent_latin_suite(Q, budget: int = MALTSEV_BUDGET) -> NilpotentLatinReport:
    """Evaluate the four equivalent conditions on a nilpotent idempotent ``Q``."""
    if not is_idempotent(Q) or not central_series(Q).nilpotent:
        raise PreconditionFailed("needs a nilpotent idempotent left quasigroup")
    c1 = is_connected(Q) and has_fix_property(Q)
    c2 = is_superconnected(Q)
    m = maltsev_search(Q, budget)
    c4 = is_latin(Q)
    known = [c1, c2, c4]
    if m.status != "unknown":
        known.append(m.found)
    return NilpotentLatinReport(c1, c2, m.status, c4, len(set(known)) == 1)


def prime_factors(k):
    primes, p = set(), 2
    while p * p <= k:
        while k % p == 0:
            primes.add(p)
            k //= p
        p += 1
    if k > 1:
        primes.add(k)
    return frozenset(primes)


@dataclass
class DivisorReport:
    order_primes: frozenset
    dis_primes: frozenset
    dis_order: int
    holds: bool
    p_group: bool | None  # only meaningful when |Q| is a prime power

    def as_dict(self):
        return {
            "order_primes": sorted(self.order_primes),
            "dis_primes": sorted(self.dis_primes),
            "dis_order": self.dis_order,
            "holds": self.holds,
            "p_group": self.p_group,
        }


def prime_divisor_check(Q, variant="superconnected", budget: int = MALTSEV_BUDGET) -> DivisorReport:
    """Compare the primes dividing |Q| and |Dis(Q)|.

    ``variant="superconnected"`` needs idempotent superconnected nilpotent
    ``Q``; ``variant="maltsev"`` needs nilpotent ``Q`` with a Mal'tsev term.
    """
    if not central_series(Q).nilpotent:
        raise PreconditionFailed("needs a nilpotent left quasigroup")
    if variant == "superconnected":
        if not (is_idempotent(Q) and is_superconnected(Q)):
            raise PreconditionFailed("needs an idempotent superconnected left quasigroup")
    elif variant == "maltsev":
        if not maltsev_search(Q, budget).found:
            raise PreconditionFailed("needs a Mal'tsev term")
    else:
        raise ValueError(variant)
    d = galois.dis(Q).size
    po, pd = prime_factors(Q.n), prime_factors(d)
    p_group = None
    if len(po) == 1:
        p_group = pd <= po
    return DivisorReport(po, pd, d, po == pd and p_group is not False, p_group)


@dataclass
class DistributivityReport:
    distributive: bool
    quandles_found: list = field(default_factory=list)

    def as_dict(self):
        return {"distributive": self.distributive, "quandles_found": list(self.quandles_found)}


def distributivity_probe(Q) -> DistributivityReport:
    """Evidence only: is Con(Q) distributive, and which pieces of Q are quandles."""
    L = congruence_lattice(Q)
    found = []
    if classify(Q).quandle:
        found.append("Q")
    for S in sorted(subuniverses(Q), key=lambda s: (len(s), sorted(s))):
        if len(S) < Q.n and classify(subalgebra(Q, S)[0]).quandle:
            found.append("sub " + " ".join(map(str, sorted(S))))
    for a in L:
        if not a.is_bottom() and not a.is_top() and classify(quotient(Q, a)[0]).quandle:
            found.append(f"quotient {a}")
    return DistributivityReport(is_distributive(L), found)


def connectivity_report(Q) -> dict:
    return {
        "connected": is_connected(Q),
        "connected_by_dis": is_connected_by_dis(Q),
        "superconnected": is_superconnected(Q),
        "lmlt_order": galois.lmlt(Q).size,
        "dis_order": galois.dis(Q).size,
        "dis_predicates": perm.group_predicates(galois.dis(Q)).as_dict(),
    }
