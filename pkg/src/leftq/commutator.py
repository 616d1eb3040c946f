"""Term-condition centralizers, commutators, center and central series.

Matrix orientation: a matrix ``(p, q, r, s)`` stands for
``[[t(x, z), t(x, u)], [t(y, z), t(y, u)]]`` with ``x alpha y`` changing the
row and ``z beta u`` (componentwise) changing the column.  The set of all such
matrices is the subuniverse of ``Q^4`` generated by ``(a, a, b, b)`` for
``a alpha b`` and ``(c, d, c, d)`` for ``c beta d``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .congruence import (
    Partition,
    congruence_generated,
    congruence_lattice,
    principal_congruence,
    pullback,
    quotient,
)
from .errors import CapExceeded, ConsistencyError
from .galois import cayley_kernel

TC_CAP = 12**4
_CHUNK_CELLS = 1 << 20


class TCMatrix(NamedTuple):
    p: int
    q: int
    r: int
    s: int


def _encode(arr, n):
    return ((arr[..., 0] * n + arr[..., 1]) * n + arr[..., 2]) * n + arr[..., 3]


@lru_cache(maxsize=8192)
def _tc_array(Q, alpha: Partition, beta: Partition) -> np.ndarray:
    n = Q.n
    if n**4 > TC_CAP:
        raise CapExceeded(f"matrix closure over Q^4 capped at {TC_CAP} cells")
    gens = [(a, a, b, b) for a, b in alpha.pairs()] + [(c, d, c, d) for c, d in beta.pairs()]
    known = np.zeros(n**4, dtype=bool)
    new = np.unique(np.array(gens, dtype=np.intp), axis=0)
    known[_encode(new, n)] = True
    everything = new
    ops = (Q.mul_array, Q.ldiv_array)
    while len(new):
        found = []
        step = max(1, _CHUNK_CELLS // max(1, len(everything)))
        for op in ops:
            for start in range(0, len(new), step):
                part = new[start:start + step]
                for left, right in ((part, everything), (everything, part)):
                    res = op[left[:, None, :], right[None, :, :]].reshape(-1, 4)
                    codes = _encode(res, n)
                    fresh = ~known[codes]
                    if fresh.any():
                        codes, idx = np.unique(codes[fresh], return_index=True)
                        known[codes] = True
                        found.append(res[fresh][idx])
        new = np.concatenate(found) if found else np.empty((0, 4), dtype=np.intp)
        everything = np.concatenate([everything, new])
    return everything


def tc_matrices(Q, alpha, beta) -> frozenset:
    return frozenset(TCMatrix(*map(int, row)) for row in _tc_array(Q, alpha, beta))


def _violations(arr, delta):
    lab = np.asarray(delta.labels)
    L = lab[arr]
    return (L[:, 0] == L[:, 1]) & (L[:, 2] != L[:, 3])


def centralizes(Q, alpha, beta, delta) -> bool:
    """C(alpha, beta; delta)."""
    return not _violations(_tc_array(Q, alpha, beta), delta).any()


def commutator(Q, alpha, beta, verify=True) -> Partition:
    """[alpha, beta] as the least fixpoint of forced identifications."""
    arr = _tc_array(Q, alpha, beta)
    delta = Partition.bottom(Q.n)
    while True:
        bad = arr[_violations(arr, delta)]
        if not len(bad):
            break
        delta = congruence_generated(Q, delta.pairs() + [(int(r), int(s)) for r, s in bad[:, 2:]])
    if verify:
        for d in congruence_lattice(Q):
            if centralizes(Q, alpha, beta, d) and not delta <= d:
                raise ConsistencyError(f"[{alpha}, {beta}] = {delta} is not below centralizing {d}")
    return delta


@lru_cache(maxsize=4096)
def center_congruence(Q, verify=True) -> Partition:
    """Largest alpha with C(alpha, 1; 0)."""
    n = Q.n
    top, bot = Partition.top(n), Partition.bottom(n)
    zeta = bot
    for a in range(n):
        for b in range(a + 1, n):
            if zeta.related(a, b):
                continue
            cg = principal_congruence(Q, a, b)
            if centralizes(Q, cg, top, bot):
                zeta = congruence_generated(Q, zeta.pairs() + cg.pairs())
    if verify:
        if not centralizes(Q, zeta, top, bot):
            raise ConsistencyError(f"center {zeta} is not central")
        for g in congruence_lattice(Q):
            if zeta < g and centralizes(Q, g, top, bot):
                raise ConsistencyError(f"central congruence {g} above center {zeta}")
    return zeta


def is_central(Q, alpha) -> bool:
    n = Q.n
    return centralizes(Q, alpha, Partition.top(n), Partition.bottom(n))


def is_abelian_congruence(Q, alpha) -> bool:
    return centralizes(Q, alpha, alpha, Partition.bottom(Q.n))


@dataclass(frozen=True)
class CentralSeries:
    chain: tuple
    nilpotency_length: int | None

    @property
    def nilpotent(self):
        return self.nilpotency_length is not None


@lru_cache(maxsize=4096)
def central_series(Q) -> CentralSeries:
    chain = [center_congruence(Q)]
    while not chain[-1].is_top():
        Qk, block_map = quotient(Q, chain[-1])
        nxt = pullback(block_map, center_congruence(Qk))
        if nxt == chain[-1]:
            return CentralSeries(tuple(chain), None)
        chain.append(nxt)
    return CentralSeries(tuple(chain), len(chain))


def is_nilpotent(Q) -> bool:
    return central_series(Q).nilpotent


def derived_series(Q) -> tuple:
    """1_Q, [1,1], [[1,1],[1,1]], ... until it stabilizes."""
    chain = [Partition.top(Q.n)]
    while not chain[-1].is_bottom():
        nxt = commutator(Q, chain[-1], chain[-1])
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return tuple(chain)


@dataclass
class AbelianReport:
    abelian: bool
    nilpotent: bool
    nilpotency_length: int | None
    solvable: bool
    solvable_length: int | None
    center: Partition
    per_congruence: list = field(default_factory=list)

    def as_dict(self):
        return {
            "abelian": self.abelian,
            "nilpotent": self.nilpotent,
            "nilpotency_length": self.nilpotency_length,
            # solvability of the algebra via the term-condition derived series
            "solvable": self.solvable,
            "solvable_length": self.solvable_length,
            "center_blocks": self.center.to_list(),
            "per_congruence": self.per_congruence,
        }


def classify_abelianness(Q) -> AbelianReport:
    zeta = center_congruence(Q)
    series = central_series(Q)
    ds = derived_series(Q)
    solvable = ds[-1].is_bottom()
    lam = cayley_kernel(Q)
    per = []
    for a in congruence_lattice(Q):
        per.append({
            "alpha": a.to_list(),
            "abelian": is_abelian_congruence(Q, a),
            "central": is_central(Q, a),
            "strongly_abelian": a <= lam,
        })
    return AbelianReport(
        abelian=zeta.is_top(),
        nilpotent=series.nilpotent,
        nilpotency_length=series.nilpotency_length,
        solvable=solvable,
        solvable_length=len(ds) - 1 if solvable else None,
        center=zeta,
        per_congruence=per,
    )


# ---------------------------------------------------------------------------
# definitional cross-check through explicit term operations


@dataclass(frozen=True)
class TermCatalog:
    """Term operations of a fixed arity as value vectors over ``Q^arity``.

    Depths up to ``full_depth`` are enumerated completely; deeper levels are
    enumerated completely when small and otherwise sampled with a fixed seed.
    """

    arity: int
    functions: np.ndarray
    complete: bool
    per_depth: tuple


@lru_cache(maxsize=512)
def term_catalog(Q, arity=4, max_depth=4, full_depth=2, samples=3000, seed=0, full_pairs=400_000):
    n = Q.n
    ops = (Q.mul_array, Q.ldiv_array)
    grid = np.array(list(itertools.product(range(n), repeat=arity)), dtype=np.intp).T
    seen = {row.astype(np.int8).tobytes() for row in grid}
    levels = [grid]
    complete = True
    rng = random.Random(seed)
    for depth in range(1, max_depth + 1):
        allf = np.concatenate(levels)
        prev = levels[-1]
        m = len(allf)
        new = []

        def add(vecs):
            for v in vecs:
                b = v.astype(np.int8).tobytes()
                if b not in seen:
                    seen.add(b)
                    new.append(v)

        if depth <= full_depth or 2 * len(prev) * m <= full_pairs:
            for op in ops:
                for i in range(len(prev)):
                    add(op[prev[i][None, :], allf])
                    add(op[allf, prev[i][None, :]])
        else:
            complete = False
            for _ in range(samples):
                op = ops[rng.randrange(2)]
                a = prev[rng.randrange(len(prev))]
                b = allf[rng.randrange(m)]
                if rng.random() < 0.5:
                    a, b = b, a
                add([op[a, b]])
        if not new:
            break
        levels.append(np.array(new, dtype=np.intp))
    funcs = np.concatenate(levels).astype(np.int8)
    return TermCatalog(arity, funcs, complete, tuple(len(x) for x in levels))


def _tc_points(n, alpha, beta, arity):
    """Index arrays of (x, z), (x, u), (y, z), (y, u) in the flattened grid."""
    apairs = alpha.pairs()
    bpairs = beta.pairs()
    rows = []
    for (x, y) in apairs:
        for zu in itertools.product(bpairs, repeat=arity - 1):
            z = [p[0] for p in zu]
            u = [p[1] for p in zu]
            rows.append((x, y, z, u))
    weights = [n ** (arity - 1 - i) for i in range(arity)]

    def idx(head, tail):
        return head * weights[0] + sum(v * w for v, w in zip(tail, weights[1:]))

    P = np.array([idx(x, z) for x, y, z, u in rows], dtype=np.intp)
    Qi = np.array([idx(x, u) for x, y, z, u in rows], dtype=np.intp)
    R = np.array([idx(y, z) for x, y, z, u in rows], dtype=np.intp)
    S = np.array([idx(y, u) for x, y, z, u in rows], dtype=np.intp)
    return P, Qi, R, S


def centralizes_by_terms(Q, alpha, beta, delta, catalog=None, chunk=1024):
    """C(alpha, beta; delta) tested term by term from the definition.

    Returns ``(holds, witness)`` where a witness is ``(term_index, point_index)``.
    ``holds`` only certifies the terms in the catalog.
    """
    # rows equal, columns equal, or everything related: the implication is a tautology
    if alpha.is_bottom() or beta.is_bottom() or delta.is_top():
        return True, None
    catalog = term_catalog(Q) if catalog is None else catalog
    P, Qi, R, S = _tc_points(Q.n, alpha, beta, catalog.arity)
    lab = np.asarray(delta.labels, dtype=np.int8)
    F = catalog.functions
    for start in range(0, len(F), chunk):
        block = lab[F[start:start + chunk]]
        bad = (block[:, P] == block[:, Qi]) & (block[:, R] != block[:, S])
        if bad.any():
            t, k = np.argwhere(bad)[0]
            return False, (start + int(t), int(k))
    return True, None


def commutator_by_terms(Q, alpha, beta, catalog=None) -> Partition:
    """Least congruence in Con(Q) passing the definitional check."""
    catalog = term_catalog(Q) if catalog is None else catalog
    ok = [d for d in congruence_lattice(Q) if centralizes_by_terms(Q, alpha, beta, d, catalog)[0]]
    least = [d for d in ok if all(d <= e for e in ok)]
    if len(least) != 1:
        raise ConsistencyError(f"no least centralizing congruence among {len(ok)} candidates")
    return least[0]
