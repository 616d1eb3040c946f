"""Partitions, congruence generation, congruence lattices and quotients."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations

from .errors import CapExceeded, NotACongruence, OrderViolation
from .table import ORDER_CAP, LeftQuasigroup


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def labels(self):
        return [self.find(x) for x in range(len(self.parent))]


@dataclass(frozen=True)
class Partition:
    """An equivalence relation on ``0..n-1`` in canonical block form.

    Blocks are sorted tuples, ordered by their minimum element.
    """

    n: int
    blocks: tuple

    @classmethod
    def from_blocks(cls, n, blocks):
        bl = sorted(tuple(sorted(b)) for b in blocks if len(b))
        flat = [x for b in bl for x in b]
        if sorted(flat) != list(range(n)):
            raise ValueError(f"blocks {bl} do not partition range({n})")
        return cls(n, tuple(bl))

    @classmethod
    def from_labels(cls, labels):
        groups = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        return cls(len(labels), tuple(sorted(tuple(g) for g in groups.values())))

    @classmethod
    def from_key(cls, n, key):
        """Partition by equality of ``key(x)``."""
        return cls.from_labels([key(x) for x in range(n)])

    @classmethod
    def from_pairs(cls, n, pairs):
        uf = UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        return cls.from_labels(uf.labels())

    @classmethod
    def bottom(cls, n):
        return cls(n, tuple((x,) for x in range(n)))

    @classmethod
    def top(cls, n):
        return cls(n, (tuple(range(n)),))

    @cached_property
    def labels(self):
        lab = [0] * self.n
        for i, b in enumerate(self.blocks):
            for x in b:
                lab[x] = i
        return tuple(lab)

    def related(self, x, y):
        return self.labels[x] == self.labels[y]

    def block_of(self, x):
        return self.blocks[self.labels[x]]

    def __len__(self):
        return len(self.blocks)

    def is_bottom(self):
        return len(self.blocks) == self.n

    def is_top(self):
        return len(self.blocks) == 1

    def __le__(self, other):
        lab = other.labels
        return all(lab[x] == lab[b[0]] for b in self.blocks for x in b)

    def __lt__(self, other):
        return self != other and self <= other

    def meet(self, other):
        return Partition.from_key(self.n, lambda x: (self.labels[x], other.labels[x]))

    def join(self, other):
        """Join as equivalence relations (transitive closure of the union)."""
        uf = UnionFind(self.n)
        for p in (self, other):
            for b in p.blocks:
                for x in b[1:]:
                    uf.union(b[0], x)
        return Partition.from_labels(uf.labels())

    def pairs(self):
        return [(x, y) for b in self.blocks for x in b for y in b]

    def __str__(self):
        return " | ".join(" ".join(map(str, b)) for b in self.blocks)

    def to_list(self):
        return [list(b) for b in self.blocks]


def parse_partition(text, n):
    blocks = [[int(v) for v in part.split()] for part in text.split("|") if part.strip()]
    return Partition.from_blocks(n, blocks)


# ---------------------------------------------------------------------------


def is_congruence(Q: LeftQuasigroup, p: Partition) -> bool:
    lab = p.labels
    mul, ldiv = Q.mul, Q.ldiv
    for b in p.blocks:
        x0 = b[0]
        for x in b[1:]:
            for u in Q.elements:
                # it suffices to change one argument at a time
                if lab[mul[x0][u]] != lab[mul[x][u]] or lab[ldiv[x0][u]] != lab[ldiv[x][u]]:
                    return False
                if lab[mul[u][x0]] != lab[mul[u][x]] or lab[ldiv[u][x0]] != lab[ldiv[u][x]]:
                    return False
    return True


def congruence_generated(Q: LeftQuasigroup, pairs) -> Partition:
    """Least congruence containing ``pairs``.

    Closes the generating pairs under the translations ``y -> x*y``,
    ``y -> x\\y``, ``y -> y*x`` and ``y -> y\\x`` with a union-find worklist.
    """
    n = Q.n
    mul, ldiv = Q.mul, Q.ldiv
    uf = UnionFind(n)
    work = []
    for a, b in pairs:
        if uf.union(a, b):
            work.append((a, b))
    while work:
        a, b = work.pop()
        for x in range(n):
            for u, v in (
                (mul[x][a], mul[x][b]),
                (ldiv[x][a], ldiv[x][b]),
                (mul[a][x], mul[b][x]),
                (ldiv[a][x], ldiv[b][x]),
            ):
                if uf.union(u, v):
                    work.append((u, v))
    return Partition.from_labels(uf.labels())


def principal_congruence(Q, a, b) -> Partition:
    return congruence_generated(Q, [(a, b)])


def join_congruences(Q, alpha, beta) -> Partition:
    return congruence_generated(Q, alpha.pairs() + beta.pairs())


@dataclass(frozen=True)
class CongruenceLattice:
    """Con(Q), sorted by decreasing number of blocks (0_Q first, 1_Q last)."""

    congruences: tuple
    leq: tuple = field(repr=False)
    meet: tuple = field(repr=False)
    join: tuple = field(repr=False)

    def __len__(self):
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __getitem__(self, i):
        return self.congruences[i]

    @cached_property
    def _index(self):
        return {c: i for i, c in enumerate(self.congruences)}

    def index(self, p):
        return self._index[p]

    def __contains__(self, p):
        return p in self._index

    @property
    def bottom(self):
        return self.congruences[0]

    @property
    def top(self):
        return self.congruences[-1]


def lattice_from_partitions(parts) -> CongruenceLattice:
    cons = sorted(set(parts), key=lambda p: (-len(p.blocks), p.blocks))
    k = len(cons)
    index = {c: i for i, c in enumerate(cons)}
    leq = tuple(tuple(a <= b for b in cons) for a in cons)
    meet = tuple(tuple(index[a.meet(b)] for b in cons) for a in cons)
    join = tuple(tuple(index[a.join(b)] for b in cons) for a in cons)
    assert all(len(r) == k for r in meet)
    return CongruenceLattice(tuple(cons), leq, meet, join)


@lru_cache(maxsize=4096)
def congruence_lattice(Q: LeftQuasigroup, cap: int = ORDER_CAP) -> CongruenceLattice:
    if Q.n > cap:
        raise CapExceeded(f"congruence lattice capped at order {cap}")
    n = Q.n
    found = {Partition.bottom(n)}
    for a, b in combinations(range(n), 2):
        found.add(principal_congruence(Q, a, b))
    frontier = list(found)
    while frontier:
        new = []
        current = list(found)
        for p in frontier:
            for q in current:
                j = join_congruences(Q, p, q)
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    return lattice_from_partitions(found)


def quotient(Q: LeftQuasigroup, alpha: Partition):
    """Quotient algebra on block indices and the element -> block map."""
    if not is_congruence(Q, alpha):
        raise NotACongruence(str(alpha))
    lab = alpha.labels
    reps = [b[0] for b in alpha.blocks]
    k = len(reps)
    table = [[lab[Q.mul[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    for x in Q.elements:
        for y in Q.elements:
            if table[lab[x]][lab[y]] != lab[Q.mul[x][y]]:
                raise NotACongruence(str(alpha))
    return LeftQuasigroup(k, table), lab


def quotient_congruence(alpha: Partition, beta: Partition) -> Partition:
    """``beta/alpha`` on the block indices of ``alpha``."""
    if not alpha <= beta:
        raise OrderViolation(f"{alpha} is not below {beta}")
    return Partition.from_key(len(alpha.blocks), lambda i: beta.labels[alpha.blocks[i][0]])


def pullback(block_map, p: Partition) -> Partition:
    """The partition of the original set induced by ``p`` on the blocks."""
    return Partition.from_key(len(block_map), lambda x: p.labels[block_map[x]])


def is_distributive(L: CongruenceLattice) -> bool:
    m, j = L.meet, L.join
    r = range(len(L))
    return all(m[a][j[b][c]] == j[m[a][b]][m[a][c]] for a in r for b in r for c in r)
