"""State spaces, regions and partial bijections.

Two backends share one interface:

* finite point sets with string labels, where a region is a set of labels
  and a partial map is an explicit injective pair list;
* finite unions of open intervals with rational endpoints, optionally on a
  circle of rational circumference, where a partial map is a translation
  restricted to a region.

Open intervals never contain their endpoints.  On a circle the canonical
form lists arcs ``(a, b)`` with both ends in ``[0, c)``; ``a > b`` (or
``b == 0``) means the arc runs through ``c``, and at most one arc contains
the point 0 in its interior.  The whole circle is the string ``"circle"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import MalformedInput, ValidationError
from .groups import format_fraction, parse_fraction

FULL = "circle"


# interval arithmetic on the line


def _merge(pieces):
    """Sort and merge overlapping open intervals; touching ones stay apart."""
    out = []
    for a, b in sorted(p for p in pieces if p[0] < p[1]):
        if out and a < out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return out


def _glue(pieces, points):
    """Merge ``(x, p)`` and ``(p, y)`` whenever ``p`` is in ``points``."""
    if not points:
        return pieces
    out = []
    for a, b in pieces:
        if out and out[-1][1] == a and a in points:
            out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return out


def _intersect(xs, ys):
    out, i, j = [], 0, 0
    while i < len(xs) and j < len(ys):
        a = max(xs[i][0], ys[j][0])
        b = min(xs[i][1], ys[j][1])
        if a < b:
            out.append((a, b))
        if xs[i][1] < ys[j][1]:
            i += 1
        else:
            j += 1
    return out


def _minus_closure(xs, ys):
    """Open set ``xs`` minus the closure of open set ``ys``."""
    out = []
    for a, b in xs:
        cur = a
        for c, d in ys:
            if d <= cur or c >= b:
                continue
            if c > cur:
                out.append((cur, c))
            cur = max(cur, d)
            if cur >= b:
                break
        if cur < b:
            out.append((cur, b))
    return [p for p in out if p[0] < p[1]]


def _mod(x: Fraction, c: Fraction) -> Fraction:
    return x - c * ((x / c).numerator // (x / c).denominator)


@dataclass(frozen=True)
class IntervalRegion:
    """Finite union of open rational intervals, possibly on a circle.

    ``pieces`` is the normalized list of open intervals inside ``(0, c)``
    (or on the line when there is no modulus); ``has0`` records whether the
    point ``0 == c`` belongs to a circle region.
    """

    modulus: Optional[Fraction]
    pieces: tuple
    has0: bool = False

    @staticmethod
    def build(pieces, modulus=None, has0=False, glue=()):
        pieces = _merge(pieces)
        pieces = _glue(pieces, set(glue))
        if modulus is None:
            return IntervalRegion(None, tuple(pieces), False)
        has0 = bool(has0) and bool(pieces) and pieces[0][0] == 0 \
            and pieces[-1][1] == modulus
        return IntervalRegion(modulus, tuple(pieces), has0)

    @staticmethod
    def from_intervals(intervals, modulus=None):
        """Accept intervals in any position; circle arcs are reduced mod c."""
        if modulus is not None:
            modulus = Fraction(modulus)
            if modulus <= 0:
                raise MalformedInput("modulus must be positive")
        if intervals == FULL:
            if modulus is None:
                raise MalformedInput("'circle' needs a modulus")
            return IntervalRegion(modulus, ((Fraction(0), modulus),), True)
        pieces, glue, has0 = [], set(), False
        for pair in intervals:
            if not isinstance(pair, (tuple, list)) or len(pair) != 2:
                raise MalformedInput(f"bad interval {pair!r}")
            a, b = (parse_fraction(v) for v in pair)
            if modulus is None:
                if not a < b:
                    raise MalformedInput(f"empty interval ({a}, {b})")
                pieces.append((a, b))
                continue
            a = _mod(a, modulus)
            b = _mod(b, modulus)
            if a < b:
                length = b - a
            else:
                length = b - a + modulus
            if length > modulus:
                raise MalformedInput("arc longer than the circle")
            end = a + length
            if end <= modulus:
                pieces.append((a, end))
            else:
                pieces.append((a, modulus))
                pieces.append((Fraction(0), end - modulus))
                has0 = True
        return IntervalRegion.build(pieces, modulus, has0, glue)

    # canonical external form

    def intervals(self):
        c = self.modulus
        ps = list(self.pieces)
        if c is None:
            return tuple(ps)
        if self.has0:
            if len(ps) == 1:
                return FULL
            first, last = ps[0], ps[-1]
            ps = ps[1:-1] + [(last[0], first[1])]
        return tuple((a, b if b != c else Fraction(0)) for a, b in ps)

    def to_json(self):
        iv = self.intervals()
        if iv == FULL:
            return FULL
        return [[format_fraction(a), format_fraction(b)] for a, b in iv]

    def __repr__(self):
        return f"IntervalRegion({self.to_json()!r}, modulus={self.modulus})"

    # set algebra

    def _check(self, other):
        if not isinstance(other, IntervalRegion):
            raise MalformedInput("region backend mismatch")
        if self.modulus != other.modulus:
            raise MalformedInput("regions live on different circles")

    def union(self, other):
        self._check(other)
        return IntervalRegion.build(self.pieces + other.pieces, self.modulus,
                                    self.has0 or other.has0)

    def intersect(self, other):
        self._check(other)
        return IntervalRegion.build(_intersect(self.pieces, other.pieces),
                                    self.modulus, self.has0 and other.has0)

    def difference(self, other):
        """Interior of the set difference (open regions stay open)."""
        self._check(other)
        pieces = _minus_closure(list(self.pieces), list(other.pieces))
        has0 = self.has0 and not other._touches_zero()
        return IntervalRegion.build(pieces, self.modulus, has0)

    def _touches_zero(self):
        if self.modulus is None or not self.pieces:
            return False
        return (self.has0 or self.pieces[0][0] == 0
                or self.pieces[-1][1] == self.modulus)

    def translate(self, s):
        s = Fraction(s)
        c = self.modulus
        if c is None:
            return IntervalRegion(None, tuple((a + s, b + s)
                                              for a, b in self.pieces))
        s = _mod(s, c)
        if s == 0:
            return self
        out, glue, has0 = [], set(), False
        for a, b in self.pieces:
            a2, b2 = a + s, b + s
            if b2 <= c:
                out.append((a2, b2))
            elif a2 >= c:
                out.append((a2 - c, b2 - c))
            else:
                out.append((a2, c))
                out.append((Fraction(0), b2 - c))
                has0 = True
        if self.has0:
            glue.add(s)
        return IntervalRegion.build(out, c, has0, glue)

    def is_empty(self):
        return not self.pieces

    def contains(self, x) -> bool:
        x = Fraction(x)
        if self.modulus is not None:
            x = _mod(x, self.modulus)
            if x == 0:
                return self.has0
        return any(a < x < b for a, b in self.pieces)

    def issubset(self, other) -> bool:
        return self.union(other) == other

    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.pieces), Fraction(0))

    def endpoints(self):
        pts = set()
        for a, b in self.pieces:
            pts.add(a)
            pts.add(b)
        if self.modulus is not None:
            if self.modulus in pts:
                pts.discard(self.modulus)
                pts.add(Fraction(0))
            if self.has0:
                pts.discard(Fraction(0))
        return pts

    def sort_key(self, x):
        return x


@dataclass(frozen=True)
class FiniteRegion:
    points: frozenset

    def _check(self, other):
        if not isinstance(other, FiniteRegion):
            raise MalformedInput("region backend mismatch")

    def union(self, other):
        self._check(other)
        return FiniteRegion(self.points | other.points)

    def intersect(self, other):
        self._check(other)
        return FiniteRegion(self.points & other.points)

    def difference(self, other):
        self._check(other)
        return FiniteRegion(self.points - other.points)

    def is_empty(self):
        return not self.points

    def contains(self, x) -> bool:
        return x in self.points

    def issubset(self, other) -> bool:
        return self.points <= other.points

    def measure(self):
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def to_json(self, order=None):
        return sorted(self.points, key=order)

    def __repr__(self):
        return f"FiniteRegion({sorted(self.points)!r})"


def region_algebra(A, B, op: str):
    if op == "union":
        return A.union(B)
    if op == "intersect":
        return A.intersect(B)
    if op == "difference":
        return A.difference(B)
    raise MalformedInput(f"unknown region operation {op!r}")


def region_translate(A: IntervalRegion, s) -> IntervalRegion:
    if not isinstance(A, IntervalRegion):
        raise MalformedInput("translation needs the interval backend")
    return A.translate(s)


# arrangements


def _cells(regions):
    """Vertices and open-cell midpoints of the common endpoint arrangement."""
    regions = list(regions)
    if not regions:
        return [], []
    modulus = regions[0].modulus
    pts = set()
    for R in regions:
        if not isinstance(R, IntervalRegion) or R.modulus != modulus:
            raise MalformedInput("decision grid needs interval regions "
                                 "on one line or circle")
        pts |= R.endpoints()
    verts = sorted(pts)
    if modulus is None:
        mids = [(a + b) / 2 for a, b in zip(verts, verts[1:])]
        return verts, mids
    if not verts:
        return [], [modulus / 2]
    mids = [(a + b) / 2 for a, b in zip(verts, verts[1:])]
    wrap = _mod((verts[-1] + verts[0] + modulus) / 2, modulus)
    mids.append(wrap)
    return verts, sorted(mids)


def decision_grid(regions: Iterable[IntervalRegion]):
    """Midpoints of every cell of the common endpoint arrangement."""
    return _cells(regions)[1]


def arrangement_points(regions):
    """Midpoints followed by vertices; together they decide every Boolean
    combination of the regions exactly."""
    verts, mids = _cells(regions)
    return mids + verts


def _cell_of(x, verts, modulus):
    """The open cell (lo, hi) of the arrangement containing midpoint x."""
    if not verts:
        return (Fraction(0), modulus)
    lo = max((v for v in verts if v < x), default=None)
    hi = min((v for v in verts if v > x), default=None)
    if modulus is not None:
        if lo is None:
            lo = verts[-1]
        if hi is None:
            hi = verts[0]
    return (lo, hi)


def difference_witness(A, B, order=None):
    """A point of ``A`` outside ``B`` (exact), or None when ``A <= B``.

    Returns ``(point, cell)``.  For finite regions ``cell`` is None.  For
    interval regions interior points are preferred: ``cell`` is the open
    arrangement cell containing the point, or ``(x, x)`` for a vertex.
    """
    if isinstance(A, FiniteRegion):
        rest = A.points - B.points
        if not rest:
            return None
        return min(rest, key=order), None
    verts, mids = _cells([A, B])
    if A.modulus is not None and not verts:
        mids = [A.modulus / 2]
    for x in mids:
        if A.contains(x) and not B.contains(x):
            return x, _cell_of(x, verts, A.modulus)
    for x in verts:
        if A.contains(x) and not B.contains(x):
            return x, (x, x)
    return None


# partial maps


@dataclass(frozen=True, eq=False)
class FiniteMap:
    """Injective partial map given by its graph."""

    fwd: dict
    bwd: dict

    @staticmethod
    def from_pairs(pairs, labels=None):
        fwd, bwd, bad = {}, {}, []
        for pair in pairs:
            if not isinstance(pair, (tuple, list)) or len(pair) != 2:
                raise MalformedInput(f"bad pair {pair!r}")
            s, t = pair
            if labels is not None and (s not in labels or t not in labels):
                bad.append((s, t))
                continue
            if s in fwd and fwd[s] != t or t in bwd and bwd[t] != s:
                bad.append((s, t))
                continue
            fwd[s] = t
            bwd[t] = s
        if bad:
            raise ValidationError("map is not an injective partial map on X",
                                  bad)
        return FiniteMap(fwd, bwd)

    @staticmethod
    def identity(points):
        return FiniteMap({p: p for p in points}, {p: p for p in points})

    @property
    def domain(self):
        return FiniteRegion(frozenset(self.fwd))

    @property
    def range(self):
        return FiniteRegion(frozenset(self.bwd))

    def apply(self, x):
        return self.fwd.get(x)

    def apply_inverse(self, y):
        return self.bwd.get(y)

    def is_empty(self):
        return not self.fwd

    def image(self, R):
        return FiniteRegion(frozenset(self.fwd[x] for x in R.points
                                      if x in self.fwd))

    def preimage(self, R):
        return FiniteRegion(frozenset(self.bwd[y] for y in R.points
                                      if y in self.bwd))

    def compose(self, g):
        """``self`` after ``g``."""
        fwd = {}
        for x, y in g.fwd.items():
            z = self.fwd.get(y)
            if z is not None:
                fwd[x] = z
        return FiniteMap(fwd, {v: k for k, v in fwd.items()})

    def inverse(self):
        return FiniteMap(self.bwd, self.fwd)

    def agreement(self, other):
        """Points where both maps are defined and agree."""
        return FiniteRegion(frozenset(x for x, y in self.fwd.items()
                                      if other.fwd.get(x) == y))

    def restrict(self, R):
        fwd = {x: y for x, y in self.fwd.items() if x in R.points}
        return FiniteMap(fwd, {v: k for k, v in fwd.items()})

    def is_restriction_of(self, g) -> bool:
        return all(g.fwd.get(x) == y for x, y in self.fwd.items())

    def pairs(self, order=None):
        return sorted(self.fwd.items(),
                      key=(lambda p: order(p[0])) if order else None)

    def __eq__(self, other):
        return isinstance(other, FiniteMap) and self.fwd == other.fwd

    def __hash__(self):
        return hash(frozenset(self.fwd.items()))

    def __repr__(self):
        return f"FiniteMap({sorted(self.fwd.items())!r})"

    def to_json(self, order=None):
        return {"pairs": [[s, t] for s, t in self.pairs(order)]}


@dataclass(frozen=True, eq=False)
class TranslationMap:
    """``x -> x + shift`` (mod c on a circle) restricted to ``domain``."""

    domain: IntervalRegion
    shift: Fraction

    @staticmethod
    def make(domain: IntervalRegion, shift):
        shift = Fraction(shift)
        if domain.is_empty():
            shift = Fraction(0)
        elif domain.modulus is not None:
            shift = _mod(shift, domain.modulus)
        return TranslationMap(domain, shift)

    @staticmethod
    def identity(X: IntervalRegion):
        return TranslationMap.make(X, 0)

    @property
    def modulus(self):
        return self.domain.modulus

    @property
    def range(self):
        return self.domain.translate(self.shift)

    def _norm(self, x):
        if self.modulus is not None:
            return _mod(x, self.modulus)
        return x

    def apply(self, x):
        if not self.domain.contains(x):
            return None
        return self._norm(Fraction(x) + self.shift)

    def apply_inverse(self, y):
        x = self._norm(Fraction(y) - self.shift)
        return x if self.domain.contains(x) else None

    def is_empty(self):
        return self.domain.is_empty()

    def image(self, R):
        return self.domain.intersect(R).translate(self.shift)

    def preimage(self, R):
        return self.domain.intersect(R.translate(-self.shift))

    def compose(self, g):
        dom = g.domain.intersect(self.domain.translate(-g.shift))
        return TranslationMap.make(dom, self.shift + g.shift)

    def inverse(self):
        return TranslationMap.make(self.range, -self.shift)

    def _same_shift(self, other):
        return self._norm(self.shift - other.shift) == 0

    def agreement(self, other):
        if self._same_shift(other):
            return self.domain.intersect(other.domain)
        return IntervalRegion.build([], self.modulus)

    def restrict(self, R):
        return TranslationMap.make(self.domain.intersect(R), self.shift)

    def is_restriction_of(self, g) -> bool:
        if self.is_empty():
            return True
        return self._same_shift(g) and self.domain.issubset(g.domain)

    def __eq__(self, other):
        return (isinstance(other, TranslationMap)
                and self.domain == other.domain
                and (self.is_empty() or self._same_shift(other)))

    def __hash__(self):
        return hash((self.domain, self.shift))

    def __repr__(self):
        return f"TranslationMap({self.domain.to_json()!r}, {self.shift})"

    def to_json(self, order=None):
        return {"domain": self.domain.to_json(),
                "shift": format_fraction(self.shift)}


def pm_compose(f, g):
    """``f`` after ``g``: domain is dom(g) intersected with g^-1(dom f)."""
    if type(f) is not type(g):
        raise MalformedInput("partial maps from different backends")
    return f.compose(g)


def pm_invert(f):
    return f.inverse()


def pm_is_restriction(f, g) -> bool:
    if type(f) is not type(g):
        raise MalformedInput("partial maps from different backends")
    return f.is_restriction_of(g)


# spaces


@dataclass(frozen=True)
class FiniteSpace:
    labels: tuple

    kind = "points"

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValidationError("point labels must be distinct",
                                  _dupes(self.labels))
        for x in self.labels:
            if not isinstance(x, str):
                raise MalformedInput(f"point label {x!r} is not a string")
        object.__setattr__(self, "_index",
                           {x: i for i, x in enumerate(self.labels)})

    def order(self, x):
        return self._index[x]

    def whole(self):
        return FiniteRegion(frozenset(self.labels))

    def empty(self):
        return FiniteRegion(frozenset())

    def region(self, points):
        pts = frozenset(points)
        bad = sorted(p for p in pts if p not in self._index)
        if bad:
            raise ValidationError("unknown point labels", bad)
        return FiniteRegion(pts)

    def identity(self):
        return FiniteMap.identity(self.labels)

    def empty_map(self):
        return FiniteMap({}, {})

    def map_from_pairs(self, pairs):
        return FiniteMap.from_pairs(pairs, self._index)

    def points(self):
        return list(self.labels)

    def region_to_json(self, R):
        return R.to_json(self.order)

    def region_from_json(self, data):
        if not isinstance(data, list):
            raise MalformedInput("finite region must be a list of labels")
        return self.region(data)

    def map_to_json(self, f):
        return f.to_json(self.order)

    def map_from_json(self, data):
        if not isinstance(data, dict) or "pairs" not in data:
            raise MalformedInput("finite partial map needs 'pairs'")
        return self.map_from_pairs(data["pairs"])

    def describe(self):
        return {"kind": "points", "labels": list(self.labels)}


def _dupes(xs):
    seen, out = set(), []
    for x in xs:
        if x in seen:
            out.append(x)
        seen.add(x)
    return out


@dataclass(frozen=True)
class IntervalSpace:
    X: IntervalRegion

    kind = "intervals"

    @property
    def modulus(self):
        return self.X.modulus

    def order(self, x):
        return x

    def whole(self):
        return self.X

    def empty(self):
        return IntervalRegion.build([], self.modulus)

    def region(self, intervals):
        R = IntervalRegion.from_intervals(intervals, self.modulus)
        if not R.issubset(self.X):
            raise ValidationError("region leaves the state space",
                                  [R.to_json()])
        return R

    def identity(self):
        return TranslationMap.identity(self.X)

    def empty_map(self):
        return TranslationMap.make(self.empty(), 0)

    def translation(self, domain, shift):
        f = TranslationMap.make(domain, shift)
        if not f.domain.issubset(self.X) or not f.range.issubset(self.X):
            raise ValidationError("translation leaves the state space",
                                  [f.to_json()])
        return f

    def region_to_json(self, R):
        return R.to_json()

    def region_from_json(self, data):
        if data != FULL and not isinstance(data, list):
            raise MalformedInput("interval region must be a list of pairs")
        return self.region(data)

    def map_to_json(self, f):
        return f.to_json()

    def map_from_json(self, data):
        if not isinstance(data, dict) or "domain" not in data \
                or "shift" not in data:
            raise MalformedInput("interval partial map needs domain and shift")
        return self.translation(self.region_from_json(data["domain"]),
                                parse_fraction(data["shift"]))

    def describe(self):
        return {"kind": "intervals",
                "modulus": None if self.modulus is None
                else format_fraction(self.modulus),
                "X": self.X.to_json()}


def space_from_description(data):
    if not isinstance(data, dict) or "kind" not in data:
        raise MalformedInput("space descriptor needs a 'kind'")
    if data["kind"] == "points":
        labels = data.get("labels")
        if not isinstance(labels, list):
            raise MalformedInput("points space needs a label list")
        return FiniteSpace(tuple(labels))
    if data["kind"] == "intervals":
        mod = data.get("modulus")
        mod = None if mod is None else parse_fraction(mod)
        if mod is not None and mod <= 0:
            raise MalformedInput("modulus must be positive")
        if "X" not in data:
            raise MalformedInput("interval space needs X")
        return IntervalSpace(IntervalRegion.from_intervals(data["X"], mod))
    raise MalformedInput(f"unknown space kind {data['kind']!r}")
