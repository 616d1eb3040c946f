"""Finite abelian groups and central extensions ``Q x A``.

The extension with data ``(Q, A, g, f, theta)`` multiplies by
``(x, a)(y, b) = (xy, g(a) + f(b) + theta(x, y))``; the pair ``(x, a)`` gets
index ``x * |A| + a`` so the kernel of the first projection has contiguous
blocks.  With a one-point base this is the affine left quasigroup
``Aff(A, g, f, c)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import prod

from .congruence import Partition, is_congruence
from .errors import ConsistencyError, MalformedInput, SpecViolation
from .table import LeftQuasigroup, is_idempotent, is_latin, parse, from_dict, trivial


@dataclass(frozen=True)
class AbGroup:
    """``Z_{n1} x ... x Z_{nk}``; element ``i`` is the mixed-radix tuple of ``i``."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(int(f) for f in self.factors)
        if any(f < 1 for f in factors):
            raise SpecViolation(f"cyclic orders must be positive: {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def order(self):
        return prod(self.factors)

    def __len__(self):
        return self.order

    @cached_property
    def elements(self):
        return tuple(itertools.product(*(range(f) for f in self.factors)))

    def index(self, t):
        i = 0
        for v, f in zip(t, self.factors):
            i = i * f + v % f
        return i

    def element(self, i):
        return self.elements[i]

    @cached_property
    def add_table(self):
        E = self.elements
        return tuple(
            tuple(self.index(tuple(x + y for x, y in zip(E[i], E[j]))) for j in range(len(E)))
            for i in range(len(E))
        )

    def add(self, i, j):
        return self.add_table[i][j]

    def neg(self, i):
        return self.index(tuple(-v for v in self.elements[i]))

    def sub(self, i, j):
        return self.add(i, self.neg(j))

    zero = 0


@dataclass(frozen=True)
class EndoMap:
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))

    def __call__(self, i):
        return self.table[i]

    def is_additive(self, A):
        t = self.table
        if len(t) != A.order or any(not 0 <= v < A.order for v in t):
            return False
        return all(t[A.add(i, j)] == A.add(t[i], t[j]) for i in range(A.order) for j in range(A.order))

    def is_bijective(self):
        return sorted(self.table) == list(range(len(self.table)))

    def inverse_table(self):
        inv = [0] * len(self.table)
        for i, v in enumerate(self.table):
            inv[v] = i
        return tuple(inv)


def scalar(A, k) -> EndoMap:
    """Multiplication by the integer ``k``."""
    return EndoMap(tuple(A.index(tuple(k * v for v in e)) for e in A.elements))


def identity_map(A) -> EndoMap:
    return EndoMap(tuple(range(A.order)))


def one_minus(A, f: EndoMap) -> EndoMap:
    """The endomorphism ``1 - f``."""
    return EndoMap(tuple(A.sub(i, f(i)) for i in range(A.order)))


def endomorphisms(A) -> list:
    """All endomorphisms, determined by the images of the unit vectors."""
    units = []
    for k in range(len(A.factors)):
        e = [0] * len(A.factors)
        e[k] = 1
        units.append(A.index(tuple(e)))
    choices = []
    for k, nk in enumerate(A.factors):
        # the image of a generator of order nk must be killed by nk
        choices.append([i for i in range(A.order) if all(nk * v % f == 0 for v, f in zip(A.elements[i], A.factors))])
    maps = []
    for imgs in itertools.product(*choices):
        table = []
        for e in A.elements:
            acc = 0
            for coeff, im in zip(e, imgs):
                for _ in range(coeff):
                    acc = A.add(acc, im)
            table.append(acc)
        m = EndoMap(tuple(table))
        if m.is_additive(A):
            maps.append(m)
    return maps


def automorphisms(A) -> list:
    return [m for m in endomorphisms(A) if m.is_bijective()]


@dataclass(frozen=True)
class ExtensionSpec:
    base: LeftQuasigroup
    group: AbGroup
    g: EndoMap
    f: EndoMap
    theta: tuple  # theta[x][y] is an element index of the group

    def validate(self):
        A = self.group
        if not self.f.is_additive(A) or not self.f.is_bijective():
            raise SpecViolation("f must be an automorphism of A")
        if not self.g.is_additive(A):
            raise SpecViolation("g must be an endomorphism of A")
        n = self.base.n
        th = self.theta
        if len(th) != n or any(len(r) != n for r in th):
            raise SpecViolation(f"theta must be {n}x{n}")
        if any(not 0 <= v < A.order for r in th for v in r):
            raise SpecViolation("theta entries must be elements of A")


def constant_theta(n, c=0):
    return tuple(tuple(c for _ in range(n)) for _ in range(n))


def central_extension(spec: ExtensionSpec):
    """The extension table and the kernel of the projection onto the base."""
    spec.validate()
    Q, A, g, f, th = spec.base, spec.group, spec.g, spec.f, spec.theta
    m = A.order
    add = A.add_table

    def op(u, v):
        x, a = divmod(u, m)
        y, b = divmod(v, m)
        return Q.mul[x][y] * m + add[add[g(a)][f(b)]][th[x][y]]

    E = LeftQuasigroup.from_function(Q.n * m, op)
    # left division (x, a) \ (z, c) = (x \ z, f^-1(c - g(a) - theta(x, x\z)))
    finv = f.inverse_table()
    for u in range(E.n):
        x, a = divmod(u, m)
        for w in range(E.n):
            z, c = divmod(w, m)
            y = Q.ldiv[x][z]
            b = finv[A.sub(A.sub(c, g(a)), th[x][y])]
            if E.ldiv[u][w] != y * m + b:
                raise ConsistencyError("left division formula disagrees with the table")
    kernel = Partition.from_key(E.n, lambda u: u // m)
    if not is_congruence(E, kernel):
        raise ConsistencyError("projection onto the base is not a morphism")
    return E, kernel


def affine(A, g: EndoMap, f: EndoMap, c: int = 0) -> LeftQuasigroup:
    """``Aff(A, g, f, c)``: ``a * b = g(a) + f(b) + c``."""
    spec = ExtensionSpec(trivial(), A, g, f, ((c,),))
    return central_extension(spec)[0]


def cyclic_affine(n, g, f, c=0) -> LeftQuasigroup:
    A = AbGroup((n,))
    return affine(A, scalar(A, g), scalar(A, f), c)


def idempotence_check(spec: ExtensionSpec) -> bool:
    """Predicted idempotence (idempotent base, g = 1 - f, theta(x, x) = 0)."""
    A = spec.group
    predicted = (
        is_idempotent(spec.base)
        and spec.g == one_minus(A, spec.f)
        and all(spec.theta[x][x] == 0 for x in spec.base.elements)
    )
    E, _ = central_extension(spec)
    if predicted != is_idempotent(E):
        raise ConsistencyError(f"idempotence predicted {predicted}, table says {not predicted}")
    return predicted


def latin_check(spec: ExtensionSpec) -> bool:
    """Predicted latinity (latin base and bijective g), checked on the table."""
    predicted = is_latin(spec.base) and spec.g.is_bijective()
    E, _ = central_extension(spec)
    if predicted != is_latin(E):
        raise ConsistencyError(f"latinity predicted {predicted}, table says {not predicted}")
    return predicted


# ---------------------------------------------------------------------------
# JSON form


def _element(A, v):
    if isinstance(v, int):
        if not 0 <= v < A.order:
            raise SpecViolation(f"element index {v} out of range")
        return v
    if isinstance(v, (list, tuple)) and len(v) == len(A.factors):
        return A.index(tuple(int(x) for x in v))
    raise MalformedInput(f"cannot read group element {v!r}")


def spec_from_dict(data) -> ExtensionSpec:
    if "factors" not in data or "g" not in data or "f" not in data:
        raise MalformedInput("extension spec needs 'factors', 'g' and 'f'")
    A = AbGroup(tuple(data["factors"]))
    base = data.get("base")
    if base is None:
        Q = trivial()
    elif isinstance(base, str):
        Q = parse(base)
    else:
        Q = from_dict(base)
    g = EndoMap(tuple(_element(A, v) for v in data["g"]))
    f = EndoMap(tuple(_element(A, v) for v in data["f"]))
    if len(g.table) != A.order or len(f.table) != A.order:
        raise SpecViolation("g and f need one image per group element")
    if "theta" in data:
        theta = tuple(tuple(_element(A, v) for v in row) for row in data["theta"])
    else:
        theta = constant_theta(Q.n, _element(A, data.get("c", 0)))
    spec = ExtensionSpec(Q, A, g, f, theta)
    spec.validate()
    return spec


def spec_to_dict(spec: ExtensionSpec) -> dict:
    return {
        "base": {"n": spec.base.n, "mul": [list(r) for r in spec.base.mul]},
        "factors": list(spec.group.factors),
        "g": list(spec.g.table),
        "f": list(spec.f.table),
        "theta": [list(r) for r in spec.theta],
    }


# ---------------------------------------------------------------------------
# seeded random specs

GROUP_SHAPES = ((1,), (2,), (3,), (4,), (5,), (6,), (7,), (8,), (2, 2), (2, 4), (2, 2, 2))


def random_affine_spec(rng, max_order=8) -> ExtensionSpec:
    """A random ``Aff(A, g, f, c)`` with ``|A| <= max_order``."""
    A = AbGroup(rng.choice([s for s in GROUP_SHAPES if prod(s) <= max_order]))
    ends = endomorphisms(A)
    auts = [m for m in ends if m.is_bijective()]
    return ExtensionSpec(trivial(), A, rng.choice(ends), rng.choice(auts), ((rng.randrange(A.order),),))


def random_extension_spec(rng, base, max_group=4, idempotent=False) -> ExtensionSpec:
    """A random extension of ``base``; ``idempotent`` imposes g = 1 - f and theta(x, x) = 0."""
    A = AbGroup(rng.choice([s for s in GROUP_SHAPES if prod(s) <= max_group]))
    ends = endomorphisms(A)
    f = rng.choice([m for m in ends if m.is_bijective()])
    g = one_minus(A, f) if idempotent else rng.choice(ends)
    n = base.n
    theta = tuple(
        tuple(0 if idempotent and x == y else rng.randrange(A.order) for y in range(n)) for x in range(n)
    )
    return ExtensionSpec(base, A, g, f, theta)
