"""Permutations and finitely generated permutation groups.

A permutation of degree ``n`` is a tuple ``img`` with ``img[x]`` the image of
``x``.  Composition follows function notation: ``compose(g, h)`` applies ``h``
first, so ``compose(L_x, inverse(L_y))`` is the displacement ``L_x L_y^-1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import CapExceeded

ENUM_CAP = 200_000
CHAIN_CAP = 10**12


def identity(n):
    return tuple(range(n))


def compose(g, h):
    return tuple(g[x] for x in h)


def inverse(g):
    inv = [0] * len(g)
    for i, v in enumerate(g):
        inv[v] = i
    return tuple(inv)


def conjugate(g, h):
    """``g h g^-1``."""
    return compose(compose(g, h), inverse(g))


def commutator(a, b):
    """``a b a^-1 b^-1``."""
    return compose(compose(a, b), compose(inverse(a), inverse(b)))


def is_identity(g):
    return all(i == v for i, v in enumerate(g))


def is_permutation(img, n=None):
    n = len(img) if n is None else n
    return len(img) == n and sorted(img) == list(range(n))


def from_cycles(n, *cycles):
    img = list(range(n))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            img[x] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def cycle_notation(g):
    seen, parts = set(), []
    for x in range(len(g)):
        if x in seen or g[x] == x:
            continue
        cyc = [x]
        seen.add(x)
        y = g[x]
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = g[y]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


# ---------------------------------------------------------------------------
# stabilizer chain (deterministic Schreier-Sims), used past the enumeration cap


def _transversal(gens, b, n):
    trans = {b: identity(n)}
    queue = [b]
    for p in queue:
        u = trans[p]
        for s in gens:
            q = s[p]
            if q not in trans:
                trans[q] = compose(s, u)
                queue.append(q)
    return trans


class StabChain:
    def __init__(self, degree, gens):
        n = degree
        self.degree = n
        gens = [g for g in gens if not is_identity(g)]
        base = []
        for g in gens:
            if all(g[b] == b for b in base):
                base.append(next(x for x in range(n) if g[x] != x))
        k = len(base)
        S = [[g for g in gens if all(g[b] == b for b in base[:i])] for i in range(k)]
        T = [_transversal(S[i], base[i], n) for i in range(k)]
        i = k - 1
        while i >= 0:
            restart = False
            for p, u in list(T[i].items()):
                for s in S[i]:
                    sch = compose(inverse(T[i][s[p]]), compose(s, u))
                    h, j = self._sift(sch, base, T, i + 1)
                    if j < len(base) or not is_identity(h):
                        if j == len(base):
                            base.append(next(x for x in range(n) if h[x] != x))
                            S.append([])
                            T.append({})
                        for level in range(i + 1, j + 1):
                            S[level].append(h)
                            T[level] = _transversal(S[level], base[level], n)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1
        self.base = base
        self.strong_gens = S
        self.transversals = T

    @staticmethod
    def _sift(g, base, T, start=0):
        for level in range(start, len(base)):
            p = g[base[level]]
            if p not in T[level]:
                return g, level
            g = compose(inverse(T[level][p]), g)
        return g, len(base)

    @property
    def order(self):
        return prod(len(t) for t in self.transversals)

    def contains(self, g):
        h, j = self._sift(tuple(g), self.base, self.transversals)
        return j == len(self.base) and is_identity(h)


# ---------------------------------------------------------------------------


def _enumerate(degree, gens, cap):
    e = identity(degree)
    elems = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if len(elems) > cap:
                        return None
        frontier = nxt
    return frozenset(elems)


class PermGroup:
    """A permutation group given by generators.

    The full element set is kept when the order is at most ``cap``; otherwise
    a stabilizer chain answers membership and order queries and anything
    needing element iteration raises :class:`CapExceeded`.
    """

    def __init__(self, degree, gens=(), cap=ENUM_CAP, elements=None):
        self.degree = degree
        gens = tuple(dict.fromkeys(tuple(g) for g in gens if not is_identity(g)))
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator {g} does not have degree {degree}")
        self.gens = gens
        self.cap = cap
        self._chain = None
        if elements is None:
            elements = _enumerate(degree, gens, cap)
            if elements is None:
                self._chain = StabChain(degree, gens)
                if self._chain.order > CHAIN_CAP:
                    raise CapExceeded(f"group order {self._chain.order} beyond budget")
        self._elements = elements

    @classmethod
    def from_elements(cls, degree, elements, cap=ENUM_CAP):
        """Subgroup with a known element set; a small generating set is picked."""
        elements = frozenset(elements)
        gens, current = [], {identity(degree)}
        for e in sorted(elements):
            if e not in current:
                gens.append(e)
                current = _enumerate(degree, gens, max(cap, len(elements)))
        return cls(degree, gens, cap=cap, elements=elements)

    @classmethod
    def trivial(cls, degree):
        return cls(degree, ())

    @property
    def enumerated(self):
        return self._elements is not None

    @property
    def elements(self):
        if self._elements is None:
            raise CapExceeded(f"group of order {self.size} is not enumerated")
        return self._elements

    @property
    def size(self):
        if self._elements is not None:
            return len(self._elements)
        return self._chain.order

    def __len__(self):
        return self.size

    def __contains__(self, g):
        g = tuple(g)
        if self._elements is not None:
            return g in self._elements
        return self._chain.contains(g)

    def __iter__(self):
        return iter(sorted(self.elements))

    def is_subgroup_of(self, other):
        return all(g in other for g in self.gens)

    def __le__(self, other):
        return self.is_subgroup_of(other)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.size == other.size
            and self.is_subgroup_of(other)
        )

    def __hash__(self):
        return hash((self.degree, self.size))

    def is_trivial(self):
        return not self.gens

    def __repr__(self):
        gens = ", ".join(cycle_notation(g) for g in self.gens[:4])
        more = ", ..." if len(self.gens) > 4 else ""
        return f"PermGroup(degree={self.degree}, size={self.size}, gens=[{gens}{more}])"

    def orbit(self, x):
        seen = {x}
        queue = [x]
        for p in queue:
            for g in self.gens:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return frozenset(seen)


def group_from_generators(gens, degree=None, cap=ENUM_CAP):
    gens = [tuple(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree needed for an empty generating set")
        degree = len(gens[0])
    return PermGroup(degree, gens, cap=cap)


def orbits(G):
    """Orbit partition of ``G`` (see :mod:`leftq.congruence` for Partition)."""
    from .congruence import Partition

    blocks, seen = [], set()
    for x in range(G.degree):
        if x not in seen:
            orb = G.orbit(x)
            seen |= orb
            blocks.append(orb)
    return Partition.from_blocks(G.degree, blocks)


def filter_subgroup(G, pred):
    return PermGroup.from_elements(G.degree, (g for g in G.elements if pred(g)), cap=G.cap)


def point_stabilizer(G, x):
    return filter_subgroup(G, lambda g: g[x] == x)


def intersection(G, H):
    if G.enumerated and (not H.enumerated or G.size <= H.size):
        return filter_subgroup(G, lambda g: g in H)
    return filter_subgroup(H, lambda g: g in G)


def join(degree, *groups, cap=ENUM_CAP):
    return PermGroup(degree, [g for G in groups for g in G.gens], cap=cap)


def normal_closure(ambient_gens, seed, degree=None, cap=ENUM_CAP):
    """Smallest group containing ``seed`` normalized by ``ambient_gens``."""
    ambient_gens = [tuple(a) for a in ambient_gens]
    seed = [tuple(s) for s in seed]
    if degree is None:
        known = ambient_gens or seed
        if not known:
            raise ValueError("degree needed")
        degree = len(known[0])
    gens = [s for s in seed if not is_identity(s)]
    H = PermGroup(degree, gens, cap=cap)
    work = list(H.gens)
    while work:
        h = work.pop()
        for a in ambient_gens:
            c = conjugate(a, h)
            if c not in H:
                gens.append(c)
                H = PermGroup(degree, gens, cap=cap)
                work.append(c)
    return H


def is_normal_in(H, G):
    """``H`` normalized by the generators of ``G`` (``H <= G`` not checked)."""
    return all(conjugate(g, h) in H for g in G.gens for h in H.gens)


def commutator_subgroup(A, B, ambient):
    """``[A, B]`` as the normal closure in ``ambient`` of generator commutators.

    Exact when ``A`` and ``B`` are normal in ``ambient``.
    """
    seed = [commutator(a, b) for a in A.gens for b in B.gens]
    return normal_closure(ambient.gens, seed, degree=ambient.degree, cap=ambient.cap)


def center(G):
    return filter_subgroup(G, lambda z: all(compose(z, g) == compose(g, z) for g in G.gens))


def is_abelian(G):
    return all(compose(a, b) == compose(b, a) for a in G.gens for b in G.gens)


def derived_series(G):
    series = [G]
    while True:
        D = commutator_subgroup(series[-1], series[-1], series[-1])
        if D.size == series[-1].size:
            return series
        series.append(D)


def lower_central_series(G):
    series = [G]
    while True:
        D = commutator_subgroup(series[-1], G, G)
        if D.size == series[-1].size:
            return series
        series.append(D)


def normalizer(G, H):
    return filter_subgroup(G, lambda g: all(conjugate(g, h) in H for h in H.gens))


def internal_direct_product_check(G, N, H):
    """``G`` is the internal direct product of ``N`` and ``H``."""
    if not (N.is_subgroup_of(G) and H.is_subgroup_of(G)):
        return False
    if any(compose(a, b) != compose(b, a) for a in N.gens for b in H.gens):
        return False
    if intersection(N, H).size != 1:
        return False
    if N.size * H.size != G.size:
        return False
    products = {compose(a, b) for a in N.elements for b in H.elements}
    return len(products) == G.size and all(p in G for p in products)


@dataclass(frozen=True)
class GroupPredicates:
    size: int
    transitive: bool
    semiregular: bool
    regular: bool
    abelian: bool
    nilpotent: bool | None
    solvable: bool | None
    nilpotency_class: int | None
    derived_length: int | None
    center: PermGroup | None

    def as_dict(self):
        d = {k: getattr(self, k) for k in (
            "size", "transitive", "semiregular", "regular", "abelian", "nilpotent",
            "solvable", "nilpotency_class", "derived_length")}
        d["center_size"] = None if self.center is None else self.center.size
        return d


def group_predicates(G) -> GroupPredicates:
    n = G.degree
    orbit_sizes = [len(G.orbit(x)) for x in range(n)]
    transitive = orbit_sizes[0] == n if n else True
    # |G_x| = |G| / |x^G|
    semiregular = all(G.size == s for s in orbit_sizes)
    nil = sol = ncls = dlen = Z = None
    if G.enumerated:
        Z = center(G)
        lcs = lower_central_series(G)
        nil = lcs[-1].size == 1
        ncls = len(lcs) - 1 if nil else None
        ds = derived_series(G)
        sol = ds[-1].size == 1
        dlen = len(ds) - 1 if sol else None
    return GroupPredicates(
        size=G.size,
        transitive=transitive,
        semiregular=semiregular,
        regular=transitive and semiregular,
        abelian=is_abelian(G),
        nilpotent=nil,
        solvable=sol,
        nilpotency_class=ncls,
        derived_length=dlen,
        center=Z,
    )
