"""Finite left quasigroups given by Cayley tables.

Elements are the indices ``0..n-1``.  ``mul[x][y]`` is ``x*y`` and
``ldiv[x][y]`` is ``x\\y``; every row of ``mul`` must be a permutation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CapExceeded, MalformedInput, NotLeftQuasigroup

ORDER_CAP = 12


def _invert_row(row):
    inv = [0] * len(row)
    for i, v in enumerate(row):
        inv[v] = i
    return tuple(inv)


@dataclass(frozen=True)
class LeftQuasigroup:
    n: int
    mul: tuple
    ldiv: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise MalformedInput(f"order must be a positive integer, got {n!r}")
        mul = tuple(tuple(int(v) for v in row) for row in self.mul)
        if len(mul) != n or any(len(row) != n for row in mul):
            raise MalformedInput(f"table is not {n}x{n}")
        for x, row in enumerate(mul):
            for v in row:
                if not 0 <= v < n:
                    raise MalformedInput(f"entry {v} out of range in row {x}")
            if len(set(row)) != n:
                raise NotLeftQuasigroup(f"row {x} is not a permutation: {list(row)}")
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "ldiv", tuple(_invert_row(row) for row in mul))

    @classmethod
    def from_function(cls, n, op):
        return cls(n, tuple(tuple(op(x, y) for y in range(n)) for x in range(n)))

    def __repr__(self):
        return f"LeftQuasigroup(n={self.n}, mul={[list(r) for r in self.mul]})"

    def __len__(self):
        return self.n

    @property
    def elements(self):
        return range(self.n)

    def L(self, x):
        """Left translation ``y -> x*y`` as an image tuple."""
        return self.mul[x]

    def R(self, x):
        return tuple(self.mul[y][x] for y in range(self.n))

    @cached_property
    def mul_array(self) -> np.ndarray:
        return np.array(self.mul, dtype=np.intp)

    @cached_property
    def ldiv_array(self) -> np.ndarray:
        return np.array(self.ldiv, dtype=np.intp)

    def __getstate__(self):
        return {"n": self.n, "mul": self.mul}

    def __setstate__(self, state):
        object.__setattr__(self, "n", state["n"])
        object.__setattr__(self, "mul", state["mul"])
        object.__setattr__(self, "ldiv", tuple(_invert_row(r) for r in state["mul"]))


# ---------------------------------------------------------------------------
# standard instances


def projection(n):
    """The projection left quasigroup P_n, ``x*y = y``."""
    return LeftQuasigroup.from_function(n, lambda x, y: y)


def dihedral(n):
    """The dihedral quandle ``x*y = 2x - y mod n``."""
    return LeftQuasigroup.from_function(n, lambda x, y: (2 * x - y) % n)


def trivial():
    return LeftQuasigroup(1, ((0,),))


# ---------------------------------------------------------------------------
# parsing and serialization


def parse(text: str) -> LeftQuasigroup:
    """Parse the ``.lq`` text format or the JSON form ``{"n": .., "mul": ..}``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"bad JSON: {exc}") from None
        return from_dict(data)
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.append(line.split())
    if not tokens:
        raise MalformedInput("empty input")
    if len(tokens[0]) != 1:
        raise MalformedInput("first line must hold the order only")
    try:
        n = int(tokens[0][0])
        rows = [[int(v) for v in row] for row in tokens[1:]]
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    if n < 1:
        raise MalformedInput("order must be positive")
    if len(rows) != n:
        raise MalformedInput(f"expected {n} rows, found {len(rows)}")
    return LeftQuasigroup(n, rows)


def from_dict(data) -> LeftQuasigroup:
    if not isinstance(data, dict) or "mul" not in data:
        raise MalformedInput("JSON form needs a 'mul' key")
    mul = data["mul"]
    n = data.get("n", len(mul))
    if not isinstance(mul, list) or not all(isinstance(r, list) for r in mul):
        raise MalformedInput("'mul' must be a list of lists")
    try:
        return LeftQuasigroup(int(n), mul)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(str(exc)) from None


def to_lq(Q: LeftQuasigroup, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(str(Q.n))
    lines.extend(" ".join(map(str, row)) for row in Q.mul)
    return "\n".join(lines) + "\n"


def to_dict(Q: LeftQuasigroup) -> dict:
    return {"n": Q.n, "mul": [list(r) for r in Q.mul]}


def load(path) -> LeftQuasigroup:
    with open(path) as fh:
        return parse(fh.read())


# ---------------------------------------------------------------------------
# elementwise properties


def idempotents(Q):
    return frozenset(x for x in Q.elements if Q.mul[x][x] == x)


def fix_sets(Q):
    return tuple(frozenset(y for y in Q.elements if Q.mul[x][y] == y) for x in Q.elements)


def is_idempotent(Q):
    return all(Q.mul[x][x] == x for x in Q.elements)


def is_projection(Q):
    return all(Q.mul[x][y] == y for x in Q.elements for y in Q.elements)


def is_rack(Q):
    m = Q.mul
    r = range(Q.n)
    return all(m[x][m[y][z]] == m[m[x][y]][m[x][z]] for x in r for y in r for z in r)


def is_latin(Q):
    return all(len(set(Q.R(x))) == Q.n for x in Q.elements)


def is_faithful(Q):
    return len(set(Q.mul)) == Q.n


def has_fix_property(Q):
    """Fix(L_x) = {x} for every x."""
    return all(s == {x} for x, s in enumerate(fix_sets(Q)))


# ---------------------------------------------------------------------------
# subalgebras


def _closure_mask(Q, mask):
    n = Q.n
    mul, ldiv = Q.mul, Q.ldiv
    members = [x for x in range(n) if mask >> x & 1]
    work = list(members)
    while work:
        x = work.pop()
        for y in list(members):
            for a, b in ((x, y), (y, x)):
                for v in (mul[a][b], ldiv[a][b]):
                    if not mask >> v & 1:
                        mask |= 1 << v
                        members.append(v)
                        work.append(v)
    return mask


def _mask(S):
    m = 0
    for x in S:
        m |= 1 << x
    return m


def _unmask(mask, n):
    return frozenset(x for x in range(n) if mask >> x & 1)


def generated_subalgebra(Q, S) -> frozenset:
    """Least subset containing ``S`` closed under ``*`` and ``\\``."""
    if not S:
        return frozenset()
    return _unmask(_closure_mask(Q, _mask(S)), Q.n)


def subuniverses(Q, cap: int = ORDER_CAP) -> frozenset:
    """All nonempty subuniverses of ``Q``."""
    if Q.n > cap:
        raise CapExceeded(f"subuniverse enumeration capped at order {cap}, got {Q.n}")
    n = Q.n
    found = set()
    frontier = []
    for x in range(n):
        m = _closure_mask(Q, 1 << x)
        if m not in found:
            found.add(m)
            frontier.append(m)
    # every subuniverse is reached by adding generators one at a time
    while frontier:
        nxt = []
        for m in frontier:
            for x in range(n):
                if not m >> x & 1:
                    m2 = _closure_mask(Q, m | 1 << x)
                    if m2 not in found:
                        found.add(m2)
                        nxt.append(m2)
        frontier = nxt
    return frozenset(_unmask(m, n) for m in found)


def is_subuniverse(Q, S) -> bool:
    S = set(S)
    return all(Q.mul[x][y] in S and Q.ldiv[x][y] in S for x in S for y in S)


def subalgebra(Q, S):
    """The subalgebra on ``S`` relabelled to ``0..|S|-1`` (in sorted order)."""
    elems = sorted(S)
    if not elems or not is_subuniverse(Q, elems):
        raise ValueError(f"{elems} is not a subuniverse")
    index = {x: i for i, x in enumerate(elems)}
    table = [[index[Q.mul[x][y]] for y in elems] for x in elems]
    return LeftQuasigroup(len(elems), table), tuple(elems)


def is_superfaithful(Q, shortcut=True) -> bool:
    if shortcut and is_idempotent(Q):
        # xy=y and yx=x forces x=y
        m = Q.mul
        return not any(
            x != y and m[x][y] == y and m[y][x] == x for x in Q.elements for y in Q.elements
        )
    return all(is_faithful(subalgebra(Q, S)[0]) for S in subuniverses(Q))


def direct_product(Q1, Q2, cap: int = ORDER_CAP) -> LeftQuasigroup:
    """Componentwise product; the pair (a, b) has index ``a * n2 + b``."""
    n1, n2 = Q1.n, Q2.n
    if n1 * n2 > cap:
        raise CapExceeded(f"product order {n1 * n2} exceeds cap {cap}")

    def op(u, v):
        a, b = divmod(u, n2)
        c, d = divmod(v, n2)
        return Q1.mul[a][c] * n2 + Q2.mul[b][d]

    return LeftQuasigroup.from_function(n1 * n2, op)


def relabel(Q, perm) -> LeftQuasigroup:
    """Isomorphic copy where element ``x`` is renamed ``perm[x]``."""
    n = Q.n
    inv = _invert_row(perm)
    return LeftQuasigroup.from_function(n, lambda x, y: perm[Q.mul[inv[x]][inv[y]]])


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class PropertyReport:
    idempotent: bool
    projection: bool
    rack: bool
    quandle: bool
    latin: bool
    faithful: bool
    superfaithful: bool
    fix_property: bool
    idempotents: frozenset
    fix_sets: tuple

    def as_dict(self):
        return {
            "idempotent": self.idempotent,
            "projection": self.projection,
            "rack": self.rack,
            "quandle": self.quandle,
            "latin": self.latin,
            "faithful": self.faithful,
            "superfaithful": self.superfaithful,
            "fix_property": self.fix_property,
            "idempotents": sorted(self.idempotents),
            "fix_sets": [sorted(s) for s in self.fix_sets],
        }


def classify(Q) -> PropertyReport:
    idem = is_idempotent(Q)
    rack = is_rack(Q)
    fixes = fix_sets(Q)
    return PropertyReport(
        idempotent=idem,
        projection=is_projection(Q),
        rack=rack,
        quandle=rack and idem,
        latin=is_latin(Q),
        faithful=is_faithful(Q),
        superfaithful=is_superfaithful(Q),
        fix_property=all(s == {x} for x, s in enumerate(fixes)),
        idempotents=idempotents(Q),
        fix_sets=fixes,
    )
