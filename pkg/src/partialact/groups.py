"""Ordered abelian groups: Z^d with the orthant cone, and the rational line.

Elements are plain immutable Python values: tuples of ints for Z^d and
``Fraction`` for the rational line.  A :class:`GroupDescriptor` knows how to
add, negate, compare and serialize them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import MalformedInput

ZD = "Zd"
RATIONAL_LINE = "RationalLine"


def parse_fraction(text) -> Fraction:
    if isinstance(text, bool):
        raise MalformedInput(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise MalformedInput(f"not a rational: {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"not a rational: {text!r}") from exc


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str
    rank: int = 1

    def __post_init__(self):
        if self.kind not in (ZD, RATIONAL_LINE):
            raise MalformedInput(f"unknown group kind {self.kind!r}")
        if self.kind == ZD and self.rank < 1:
            raise MalformedInput("Z^d needs rank >= 1")
        if self.kind == RATIONAL_LINE and self.rank != 1:
            object.__setattr__(self, "rank", 1)

    @property
    def cone(self) -> str:
        return "Orthant" if self.kind == ZD else "NonNegative"

    # element arithmetic

    def coerce(self, g):
        """Check the shape of ``g`` and return it in canonical form."""
        if self.kind == ZD:
            if isinstance(g, int) and not isinstance(g, bool) and self.rank == 1:
                return (g,)
            if not isinstance(g, (tuple, list)):
                raise MalformedInput(f"expected an integer vector, got {g!r}")
            if len(g) != self.rank:
                raise MalformedInput(
                    f"rank mismatch: {list(g)!r} in Z^{self.rank}")
            out = []
            for c in g:
                if isinstance(c, bool) or not isinstance(c, int):
                    if isinstance(c, Fraction) and c.denominator == 1:
                        c = c.numerator
                    else:
                        raise MalformedInput(f"non-integer coordinate {c!r}")
                out.append(int(c))
            return tuple(out)
        if isinstance(g, (tuple, list)):
            raise MalformedInput(f"expected a rational, got {g!r}")
        return parse_fraction(g)

    def zero(self):
        return (0,) * self.rank if self.kind == ZD else Fraction(0)

    def add(self, a, b):
        if self.kind == ZD:
            return tuple(x + y for x, y in zip(a, b))
        return a + b

    def neg(self, a):
        if self.kind == ZD:
            return tuple(-x for x in a)
        return -a

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, k: int, a):
        if self.kind == ZD:
            return tuple(k * x for x in a)
        return k * a

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def key(self, g):
        """Total order used for deterministic iteration (not the group order)."""
        return g if self.kind == ZD else (g,)

    def unit_vectors(self):
        if self.kind == ZD:
            return [tuple(int(i == j) for j in range(self.rank))
                    for i in range(self.rank)]
        return [Fraction(1)]

    # serialization

    def to_json(self, g):
        if self.kind == ZD:
            return list(g)
        return format_fraction(g)

    def from_json(self, data):
        return self.coerce(data)

    def describe(self) -> dict:
        if self.kind == ZD:
            return {"kind": ZD, "rank": self.rank}
        return {"kind": RATIONAL_LINE}

    @classmethod
    def from_description(cls, data) -> "GroupDescriptor":
        if not isinstance(data, dict) or "kind" not in data:
            raise MalformedInput("group descriptor needs a 'kind'")
        kind = data["kind"]
        if kind == ZD:
            rank = data.get("rank", 1)
            if isinstance(rank, bool) or not isinstance(rank, int):
                raise MalformedInput("rank must be an integer")
            return cls(ZD, rank)
        if kind == RATIONAL_LINE:
            return cls(RATIONAL_LINE)
        raise MalformedInput(f"unknown group kind {kind!r}")


def Zd(rank: int) -> GroupDescriptor:
    return GroupDescriptor(ZD, rank)


def rational_line() -> GroupDescriptor:
    return GroupDescriptor(RATIONAL_LINE)


def cone_contains(desc: GroupDescriptor, g) -> bool:
    g = desc.coerce(g)
    if desc.kind == ZD:
        return all(c >= 0 for c in g)
    return g >= 0


def is_totally_ordering(desc: GroupDescriptor) -> bool:
    return desc.kind == RATIONAL_LINE or desc.rank == 1


# subgroups


def _xgcd(a: int, b: int):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class Subgroup:
    """Finitely generated subgroup with a canonical basis.

    For Z^d the basis is the row Hermite normal form of the generators:
    pivots strictly increase, are positive, and entries above a pivot lie in
    ``[0, pivot)``.  ``coeffs[i]`` writes basis row ``i`` as an integer
    combination of ``gens``.  For the rational line the basis has at most one
    positive element.
    """

    desc: GroupDescriptor
    gens: tuple
    basis: tuple
    coeffs: tuple = field(repr=False, compare=False)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.desc == other.desc
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.desc, self.basis))

    def is_trivial(self) -> bool:
        return not self.basis

    def __contains__(self, g) -> bool:
        return subgroup_member(self, g)

    def reduce(self, g):
        """Canonical coset representative of ``g`` modulo the subgroup."""
        return self._reduce(self.desc.coerce(g))[0]

    def _reduce(self, g):
        desc = self.desc
        mult = [0] * len(self.basis)
        if desc.kind == ZD:
            g = list(g)
            for i, row in enumerate(self.basis):
                p = _pivot(row)
                q = g[p] // row[p]
                if q:
                    mult[i] = q
                    for j in range(len(g)):
                        g[j] -= q * row[j]
            return tuple(g), mult
        if not self.basis:
            return g, mult
        h = self.basis[0]
        q = (g / h).numerator // (g / h).denominator
        mult[0] = q
        return g - q * h, mult

    def express(self, g):
        """Integer coefficients over ``gens`` summing to ``g``, or None."""
        g = self.desc.coerce(g)
        rest, mult = self._reduce(g)
        if not self.desc.is_zero(rest):
            return None
        out = [0] * len(self.gens)
        for m, row in zip(mult, self.coeffs):
            for j, c in enumerate(row):
                out[j] += m * c
        return out


def _pivot(row) -> int:
    for j, c in enumerate(row):
        if c:
            return j
    raise ValueError("zero row has no pivot")


def subgroup_reduce(desc: GroupDescriptor, gens: Sequence) -> Subgroup:
    gens = tuple(desc.coerce(g) for g in gens)
    if desc.kind == RATIONAL_LINE:
        return _rational_subgroup(desc, gens)
    m, d = len(gens), desc.rank
    rows = [list(g) for g in gens]
    track = [[int(i == j) for j in range(m)] for i in range(m)]

    def sub_row(dst, src, q):
        rows[dst] = [a - q * b for a, b in zip(rows[dst], rows[src])]
        track[dst] = [a - q * b for a, b in zip(track[dst], track[src])]

    r = 0
    for c in range(d):
        while True:
            live = [i for i in range(r, m) if rows[i][c]]
            if not live:
                break
            piv = min(live, key=lambda i: abs(rows[i][c]))
            rows[r], rows[piv] = rows[piv], rows[r]
            track[r], track[piv] = track[piv], track[r]
            done = True
            for i in range(r + 1, m):
                if rows[i][c]:
                    sub_row(i, r, rows[i][c] // rows[r][c])
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < m and rows[r][c]:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
                track[r] = [-a for a in track[r]]
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    sub_row(i, r, q)
            r += 1
    basis = tuple(tuple(rows[i]) for i in range(r))
    coeffs = tuple(tuple(track[i]) for i in range(r))
    return Subgroup(desc, gens, basis, coeffs)


def _rational_subgroup(desc, gens):
    nonzero = [(i, g) for i, g in enumerate(gens) if g != 0]
    if not nonzero:
        return Subgroup(desc, gens, (), ())
    den = 1
    for _, g in nonzero:
        den = den * g.denominator // gcd(den, g.denominator)
    acc, coeff = 0, [0] * len(gens)
    for i, g in nonzero:
        n = int(g * den)
        new, x, y = _xgcd(acc, n)
        coeff = [x * c for c in coeff]
        coeff[i] += y
        acc = new
    return Subgroup(desc, gens, (Fraction(acc, den),), (tuple(coeff),))


def subgroup_member(H: Subgroup, g) -> bool:
    g = H.desc.coerce(g)
    return H.desc.is_zero(H._reduce(g)[0])


def subgroup_equals_group(H: Subgroup) -> bool:
    """True when a Z^d subgroup is all of Z^d (basis is the identity)."""
    if H.desc.kind != ZD:
        raise MalformedInput("only meaningful for Z^d")
    return H.basis == tuple(H.desc.unit_vectors())
