"""Enumeration of small left quasigroups, isomorphism reduction and filters.

Tables are enumerated row by row, each row a permutation in lexicographic
order.  Isomorphism classes are found through a canonical code: the least
base-``n`` encoding of the table over all relabelings, computed in bulk with
numpy.  ``find_isomorphism`` is an independent backtracking test.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import galois
from .commutator import center_congruence, central_series
from .errors import CapExceeded, MalformedInput
from .table import LeftQuasigroup, classify, is_idempotent

EXHAUSTIVE_CAP = 4
SAMPLE_CAP = 5


def count(order, idempotent=False) -> int:
    if idempotent:
        return math.factorial(order - 1) ** order if order else 1
    return math.factorial(order) ** order


def _row_choices(order, idempotent):
    rows = list(itertools.permutations(range(order)))
    if not idempotent:
        return [rows] * order
    return [[r for r in rows if r[x] == x] for x in range(order)]


def table_array(order, idempotent=False) -> np.ndarray:
    """All tables as an ``(N, n, n)`` int8 array, in enumeration order."""
    if order > EXHAUSTIVE_CAP:
        raise CapExceeded(f"exhaustive census capped at order {EXHAUSTIVE_CAP}")
    if order == 0:
        return np.zeros((1, 0, 0), dtype=np.int8)
    choices = [np.array(c, dtype=np.int8) for c in _row_choices(order, idempotent)]
    grids = np.meshgrid(*[np.arange(len(c)) for c in choices], indexing="ij")
    idx = [g.reshape(-1) for g in grids]
    return np.stack([choices[x][idx[x]] for x in range(order)], axis=1)


def tables(order, idempotent=False):
    """Iterate over every left quasigroup of the given order."""
    if order > EXHAUSTIVE_CAP:
        raise CapExceeded(f"exhaustive census capped at order {EXHAUSTIVE_CAP}")
    for rows in itertools.product(*_row_choices(order, idempotent)):
        yield LeftQuasigroup(order, rows)


def sample(order, size, seed=0, idempotent=False) -> list:
    """``size`` tables drawn uniformly (with replacement) using ``random.Random(seed)``."""
    if order > SAMPLE_CAP:
        raise CapExceeded(f"sampled census capped at order {SAMPLE_CAP}")
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        rows = []
        for x in range(order):
            if idempotent:
                rest = [y for y in range(order) if y != x]
                rng.shuffle(rest)
                rest.insert(x, x)
                rows.append(tuple(rest))
            else:
                r = list(range(order))
                rng.shuffle(r)
                rows.append(tuple(r))
        out.append(LeftQuasigroup(order, rows))
    return out


# ---------------------------------------------------------------------------
# isomorphism


def _codes(arr, n):
    flat = arr.reshape(len(arr), -1).astype(np.int64)
    weights = n ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    return flat @ weights


def canonical_codes(arr: np.ndarray) -> np.ndarray:
    """Least table code over all relabelings, for each table in ``arr``."""
    n = arr.shape[1]
    if n > SAMPLE_CAP:
        raise CapExceeded(f"canonical codes capped at order {SAMPLE_CAP}")
    best = None
    for p in itertools.permutations(range(n)):
        p = np.array(p, dtype=np.int8)
        inv = np.argsort(p)
        # relabelled[a][b] = p[T[inv a][inv b]]
        codes = _codes(p[arr[:, inv][:, :, inv]], n)
        best = codes if best is None else np.minimum(best, codes)
    return best


def decode(code, n) -> LeftQuasigroup:
    digits = []
    for _ in range(n * n):
        code, d = divmod(int(code), n)
        digits.append(d)
    digits.reverse()
    return LeftQuasigroup(n, [digits[i * n:(i + 1) * n] for i in range(n)])


def canonical_form(Q) -> LeftQuasigroup:
    if Q.n == 0:
        return Q
    arr = np.array([Q.mul], dtype=np.int8)
    return decode(canonical_codes(arr)[0], Q.n)


def isomorphism_classes(order, idempotent=False, arr=None):
    """``[(representative, class_size)]`` sorted by canonical code."""
    arr = table_array(order, idempotent) if arr is None else arr
    if order == 0:
        return [(LeftQuasigroup(0, ()), 1)]
    codes, sizes = np.unique(canonical_codes(arr), return_counts=True)
    return [(decode(c, order), int(s)) for c, s in zip(codes, sizes)]


def _invariant(Q, x):
    return (
        Q.mul[x][x] == x,
        _cycle_type(Q.L(x)),
        sum(Q.mul[y][x] == x for y in Q.elements),
        len({Q.mul[y][x] for y in Q.elements}),
    )


def _cycle_type(g):
    seen, lengths = set(), []
    for x in range(len(g)):
        if x in seen:
            continue
        k, y = 0, x
        while y not in seen:
            seen.add(y)
            y = g[y]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths))


def find_isomorphism(Q1, Q2):
    """A bijection ``phi`` with ``phi(x*y) = phi(x)*phi(y)``, or None.

    Backtracking over images, pruned by per-element invariants and by
    forcing ``phi(x*y)`` once ``phi(x)`` and ``phi(y)`` are known.
    """
    n = Q1.n
    if Q2.n != n:
        return None
    inv1 = [_invariant(Q1, x) for x in range(n)]
    inv2 = [_invariant(Q2, x) for x in range(n)]
    if sorted(inv1) != sorted(inv2):
        return None
    m1, m2 = Q1.mul, Q2.mul

    def extend(phi, used, forced):
        # apply forced assignments, then verify all determined products
        phi, used = dict(phi), set(used)
        queue = list(forced)
        while queue:
            x, y = queue.pop()
            if x in phi:
                if phi[x] != y:
                    return None
                continue
            if y in used or inv1[x] != inv2[y]:
                return None
            phi[x] = y
            used.add(y)
            for a in list(phi):
                for u, v in ((a, x), (x, a)):
                    queue.append((m1[u][v], m2[phi[u]][phi[v]]))
        return phi, used

    def search(phi, used):
        if len(phi) == n:
            return phi
        x = next(v for v in range(n) if v not in phi)
        for y in range(n):
            if y in used or inv1[x] != inv2[y]:
                continue
            res = extend(phi, used, [(x, y)])
            if res is not None:
                found = search(*res)
                if found is not None:
                    return found
        return None

    phi = search({}, set())
    if phi is None:
        return None
    return tuple(phi[x] for x in range(n))


def are_isomorphic(Q1, Q2) -> bool:
    return find_isomorphism(Q1, Q2) is not None


# ---------------------------------------------------------------------------
# filters


def _maltsev(Q):
    from .maltsev import maltsev_search

    return maltsev_search(Q).found


def _superconnected(Q):
    from .maltsev import is_superconnected

    return is_superconnected(Q)


def _connected(Q):
    return len(galois.lmlt(Q).orbit(0)) == Q.n if Q.n else True


FILTERS = {
    "idempotent": is_idempotent,
    "projection": lambda Q: classify(Q).projection,
    "rack": lambda Q: classify(Q).rack,
    "quandle": lambda Q: classify(Q).quandle,
    "latin": lambda Q: classify(Q).latin,
    "faithful": lambda Q: classify(Q).faithful,
    "superfaithful": lambda Q: classify(Q).superfaithful,
    "fix": lambda Q: classify(Q).fix_property,
    "connected": _connected,
    "superconnected": _superconnected,
    "semiregular": galois.is_semiregular,
    "cayley": galois.is_cayley,
    "abelian": lambda Q: center_congruence(Q).is_top(),
    "nilpotent": lambda Q: central_series(Q).nilpotent,
    "maltsev": _maltsev,
}


def parse_filters(text) -> tuple:
    """``"semiregular,not-quandle"`` -> ``(("semiregular", True), ("quandle", False))``."""
    out = []
    for item in (text or "").split(","):
        item = item.strip()
        if not item:
            continue
        want = True
        if item.startswith("not-"):
            want, item = False, item[4:]
        if item not in FILTERS:
            raise MalformedInput(f"unknown filter {item!r}; choose from {', '.join(sorted(FILTERS))}")
        out.append((item, want))
    return tuple(out)


def matches(Q, filters) -> bool:
    # cheap table predicates first so group computations are skipped when possible
    return all(FILTERS[name](Q) == want for name, want in filters)


@dataclass(frozen=True)
class CensusConfig:
    order: int
    idempotent: bool = False
    reduce: bool = False
    filters: tuple = ()
    sample: int | None = None
    seed: int = 0


@dataclass
class CensusResult:
    config: CensusConfig
    total: int
    classes: int | None
    matched: list = field(default_factory=list)  # (Q, class size)

    def as_dict(self):
        c = self.config
        return {
            "order": c.order,
            "idempotent": c.idempotent,
            "reduced": c.reduce,
            "sampled": c.sample,
            "seed": c.seed if c.sample is not None else None,
            "filters": [n if w else "not-" + n for n, w in c.filters],
            "total": self.total,
            "classes": self.classes,
            "matched": len(self.matched),
            "instances": [{"mul": [list(r) for r in Q.mul], "class_size": s} for Q, s in self.matched],
        }


def census_instances(config: CensusConfig):
    """``[(Q, weight)]``: classes with their sizes, or raw tables with weight 1."""
    if config.sample is not None:
        return [(Q, 1) for Q in sample(config.order, config.sample, config.seed, config.idempotent)]
    if config.order > EXHAUSTIVE_CAP:
        raise CapExceeded(f"exhaustive census capped at order {EXHAUSTIVE_CAP}; use sampling")
    if config.reduce:
        return isomorphism_classes(config.order, config.idempotent)
    return [(Q, 1) for Q in tables(config.order, config.idempotent)]


def run_census(config: CensusConfig) -> CensusResult:
    inst = census_instances(config)
    total = sum(w for _, w in inst)
    matched = [(Q, w) for Q, w in inst if matches(Q, config.filters)]
    return CensusResult(config, total, len(inst) if config.reduce else None, matched)


# ---------------------------------------------------------------------------
# semiregular quandles with a non-semiregular quotient


@dataclass(frozen=True)
class Witness:
    table: LeftQuasigroup
    alpha: object  # congruence whose quotient is not semiregular
    route: str
    detail: str


def nonsemiregular_quotient(Q):
    from .congruence import congruence_lattice, quotient

    for a in congruence_lattice(Q):
        if not galois.is_semiregular(quotient(Q, a)[0]):
            return a
    return None


def is_nonclosure_witness(Q) -> bool:
    return classify(Q).quandle and galois.is_semiregular(Q) and nonsemiregular_quotient(Q) is not None


def _direct_witnesses(max_order):
    for order in range(1, min(max_order, EXHAUSTIVE_CAP) + 1):
        for Q, _ in isomorphism_classes(order, idempotent=True):
            if is_nonclosure_witness(Q):
                yield Witness(Q, nonsemiregular_quotient(Q), "census", f"order {order} idempotent census")


def _extension_witnesses(max_order, per_family):
    from .extension import GROUP_SHAPES, AbGroup, ExtensionSpec, automorphisms, central_extension, one_minus

    bases = [
        Q
        for order in range(2, EXHAUSTIVE_CAP + 1)
        for Q, _ in isomorphism_classes(order, idempotent=True)
        if classify(Q).quandle and not galois.is_semiregular(Q)
    ]
    for B in bases:
        n = B.n
        offdiag = [(x, y) for x in range(n) for y in range(n) if x != y]
        for shape in GROUP_SHAPES:
            A = AbGroup(shape)
            if A.order < 2 or n * A.order > max_order:
                continue
            for f in automorphisms(A):
                g = one_minus(A, f)
                vals = itertools.islice(itertools.product(range(A.order), repeat=len(offdiag)), per_family)
                for v in vals:
                    theta = [[0] * n for _ in range(n)]
                    for (x, y), c in zip(offdiag, v):
                        theta[x][y] = c
                    spec = ExtensionSpec(B, A, g, f, tuple(map(tuple, theta)))
                    E, _ = central_extension(spec)
                    if is_nonclosure_witness(E):
                        yield Witness(E, nonsemiregular_quotient(E), "extension",
                                      f"base {[list(r) for r in B.mul]}, A = {' x '.join(f'Z_{k}' for k in shape)}, f = {list(f.table)}, theta = {theta}")


def mine_nonclosure_witness(max_order=12, routes=("census", "extension"), per_family=5000):
    """First witness found along each route, in route order."""
    found = []
    for route in routes:
        gen = _direct_witnesses(max_order) if route == "census" else _extension_witnesses(max_order, per_family)
        w = next(gen, None)
        if w is not None:
            found.append(w)
    return found
