"""The principal groupoid of a free partial action on a finite set.

Arrows are pairs (x, y) with y = a_t(x); freeness makes t unique, and it is
recorded as the cocycle value c(x, y) = t.  Functions on arrows multiply by
convolution, which is matrix multiplication on each orbit block with rows
indexed by x and columns by y.
"""
from __future__ import annotations

from dataclasses import dataclass

from .actions import ActionSystem, check_axioms
from .errors import (FreenessError, RequiresExtension, UnsupportedBackend,
                     ValidationError)
from .gaussian import GQ, ZERO, bmax, bsum, modulus
from .spaces import FiniteSpace


@dataclass
class FiniteGroupoid:
    system: ActionSystem
    cocycle: dict          # (x, y) -> t
    orbits: list           # lists of points in label order

    @property
    def arrows(self):
        return [(x, y, t) for (x, y), t in self.cocycle.items()]

    def orbit_of(self, x):
        for orb in self.orbits:
            if x in orb:
                return orb
        raise KeyError(x)

    def units(self):
        return [(x, x) for x in self.system.points()]

    def __contains__(self, arrow):
        return tuple(arrow) in self.cocycle

    def __len__(self):
        return len(self.cocycle)


def build_groupoid(sys: ActionSystem, validate: bool = True) -> FiniteGroupoid:
    if not isinstance(sys.space, FiniteSpace):
        raise UnsupportedBackend("groupoids need the finite backend")
    if sys.cone_only:
        raise RequiresExtension(
            "a cone-only system has no inverse maps; extend it first")
    if validate:
        report = check_axioms(sys)
        for name, v in report.verdicts.items():
            if not v.passed:
                raise ValidationError(f"condition {name} fails", [v.witness])
    desc = sys.group
    zero = desc.zero()
    cocycle = {}
    for t in sys.elements():
        for x, y in sys.map(t).pairs(sys.order):
            if x == y and t != zero:
                raise FreenessError(f"a_{t} fixes {x}", (t, x))
            s = cocycle.setdefault((x, y), t)
            if s != t:
                raise FreenessError(f"{x} -> {y} under both {s} and {t}",
                                    (desc.sub(t, s), x))
    for x in sys.points():
        cocycle.setdefault((x, x), zero)

    # orbits: union-find over arrows
    parent = {x: x for x in sys.points()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in cocycle:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry, key=sys.order)] = min(rx, ry, key=sys.order)
    groups = {}
    for x in sys.points():
        groups.setdefault(find(x), []).append(x)
    orbits = sorted(groups.values(), key=lambda o: sys.order(o[0]))
    gpd = FiniteGroupoid(sys, cocycle, orbits)
    if validate:
        check_cocycle(gpd)
    return gpd


def check_cocycle(gpd: FiniteGroupoid):
    """Every composable pair composes to an arrow with additive cocycle."""
    desc = gpd.system.group
    out = {}
    for (x, y), t in gpd.cocycle.items():
        out.setdefault(x, []).append((y, t))
    for (x, y), t in gpd.cocycle.items():
        for z, s in out.get(y, ()):
            total = gpd.cocycle.get((x, z))
            if total is None or total != desc.add(t, s):
                raise ValidationError(
                    f"arrows ({x},{y}) and ({y},{z}) do not compose",
                    (x, y, z))


class GroupoidFunction:
    """A finitely supported function on the arrows of a groupoid."""

    def __init__(self, gpd: FiniteGroupoid, values=None):
        self.gpd = gpd
        vals = {}
        for arrow, v in dict(values or {}).items():
            arrow = tuple(arrow)
            if arrow not in gpd.cocycle:
                raise ValidationError(f"{arrow} is not an arrow", arrow)
            v = GQ.coerce(v)
            if v:
                vals[arrow] = vals.get(arrow, ZERO) + v
        self.values = {a: v for a, v in vals.items() if v}

    @classmethod
    def delta(cls, gpd, *arrows, value=1):
        return cls(gpd, {a: value for a in arrows})

    @classmethod
    def units(cls, gpd):
        return cls(gpd, {u: 1 for u in gpd.units()})

    def __call__(self, x, y):
        return self.values.get((x, y), ZERO)

    def __eq__(self, other):
        return isinstance(other, GroupoidFunction) and \
            self.values == other.values

    def __add__(self, other):
        vals = dict(self.values)
        for a, v in other.values.items():
            vals[a] = vals.get(a, ZERO) + v
        return GroupoidFunction(self.gpd, vals)

    def scale(self, c):
        c = GQ.coerce(c)
        return GroupoidFunction(self.gpd, {a: c * v
                                           for a, v in self.values.items()})

    def __repr__(self):
        body = ", ".join(f"{a}: {v}" for a, v in sorted(self.values.items()))
        return f"GroupoidFunction({{{body}}})"

    def to_json(self):
        order = self.gpd.system.order
        items = sorted(self.values.items(),
                       key=lambda kv: (order(kv[0][0]), order(kv[0][1])))
        return [{"x": x, "y": y, "value": str(v)} for (x, y), v in items]


def _same(f, g):
    if f.gpd is not g.gpd and f.gpd.cocycle != g.gpd.cocycle:
        raise ValidationError("functions live on different groupoids")


def conv_mul(f: GroupoidFunction, g: GroupoidFunction) -> GroupoidFunction:
    """(f g)(x, z) = sum over y of f(x, y) g(y, z)."""
    _same(f, g)
    by_source = {}
    for (y, z), v in g.values.items():
        by_source.setdefault(y, []).append((z, v))
    out = {}
    for (x, y), a in f.values.items():
        for z, b in by_source.get(y, ()):
            out[(x, z)] = out.get((x, z), ZERO) + a * b
    return GroupoidFunction(f.gpd, out)


def conv_adjoint(f: GroupoidFunction) -> GroupoidFunction:
    return GroupoidFunction(f.gpd, {(y, x): v.conj()
                                    for (x, y), v in f.values.items()})


def i_norm(f: GroupoidFunction, bits: int = 64):
    """Max of the largest row sum and the largest column sum of |f|.

    Returns a Fraction when every modulus is rational, otherwise a
    :class:`~partialact.gaussian.Bounded` enclosure.
    """
    rows, cols = {}, {}
    for (x, y), v in f.values.items():
        m = modulus(v, bits)
        rows.setdefault(x, []).append(m)
        cols.setdefault(y, []).append(m)
    sums = [bsum(ms, bits) for ms in rows.values()] + \
        [bsum(ms, bits) for ms in cols.values()]
    return bmax(sums, bits).settle()


def matrix_realize(f: GroupoidFunction):
    """One exact block per orbit: block[i][j] = f(orbit[i], orbit[j])."""
    return [(orb, [[f(x, y) for y in orb] for x in orb])
            for orb in f.gpd.orbits]


def block_to_numpy(block):
    import numpy as np

    return np.array([[v.to_complex() for v in row] for row in block],
                    dtype=complex)


def cstar_norm(f: GroupoidFunction) -> float:
    """Largest spectral norm over the orbit blocks (numerical)."""
    import numpy as np

    best = 0.0
    for orb, block in matrix_realize(f):
        if any(v for row in block for v in row):
            best = max(best, float(np.linalg.norm(block_to_numpy(block), 2)))
    return best
