"""Action systems and the axiom / property checkers.

An :class:`ActionSystem` declares a finite support of group elements, each
carrying a partial map.  Elements outside the support are resolved by a
closure rule; the default rule gives them the empty map.

Every check is exact.  Set conditions are decided with region algebra, and
pointwise conditions are reduced to an inclusion ``A <= B`` of regions whose
failures are located by :func:`spaces.difference_witness`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import MalformedInput, ValidationError
from .groups import (GroupDescriptor, ZD, cone_contains, subgroup_equals_group,
                     subgroup_reduce)
from .spaces import FiniteSpace, IntervalSpace, difference_witness

# closure rules for undeclared group elements

EMPTY = "empty"
TRANSLATE = "translate"
PERIODIC = "periodic"
COSET = "coset"


@dataclass(frozen=True)
class Closure:
    """How an undeclared element gets its map.

    ``translate``: interval backend only, translation by g restricted to
    ``X`` intersected with ``X - g``.
    ``periodic``: ``params["lattice"]`` generates a subgroup L; g takes the
    map of the declared representative of g + L (empty when none exists).
    ``coset``: ``params["components"]`` lists (points, potential, subgroup)
    triples produced by the extension solver.
    """

    kind: str = EMPTY
    params: tuple = ()

    def param(self, key, default=None):
        return dict(self.params).get(key, default)


NO_CLOSURE = Closure()


@dataclass(eq=False)
class ActionSystem:
    group: GroupDescriptor
    space: object
    support: dict
    cone_only: bool = True
    closure: Closure = NO_CLOSURE
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        support = {}
        for g, f in self.support.items():
            support[self.group.coerce(g)] = f
        zero = self.group.zero()
        if zero not in support:
            support[zero] = self.space.identity()
        self.support = support
        self._validate()

    def _validate(self):
        bad = []
        X = self.space.whole()
        for g, f in self.support.items():
            if not f.domain.issubset(X) or not f.range.issubset(X):
                bad.append(("outside X", g))
            if isinstance(self.space, FiniteSpace) and \
                    type(f).__name__ != "FiniteMap":
                bad.append(("backend", g))
            if isinstance(self.space, IntervalSpace) and \
                    type(f).__name__ != "TranslationMap":
                bad.append(("backend", g))
            if self.cone_only and not f.is_empty() and \
                    not cone_contains(self.group, g):
                bad.append(("outside cone", g))
        if self.closure.kind == TRANSLATE and \
                not isinstance(self.space, IntervalSpace):
            bad.append(("closure", TRANSLATE))
        if bad:
            raise ValidationError("malformed action system", bad)

    # lookup

    def elements(self):
        """Declared elements in a deterministic order."""
        return sorted(self.support, key=self.group.key)

    def cone_elements(self):
        return [g for g in self.elements() if cone_contains(self.group, g)]

    def map(self, g):
        g = self.group.coerce(g)
        f = self.support.get(g)
        if f is not None:
            return f
        f = self._cache.get(g)
        if f is None:
            f = self._close(g)
            self._cache[g] = f
        return f

    def _close(self, g):
        kind = self.closure.kind
        if kind == EMPTY:
            return self.space.empty_map()
        if kind == TRANSLATE:
            shift = g[0] if self.group.kind == ZD else g
            X = self.space.whole()
            return self.space.translation(X.intersect(X.translate(-shift)),
                                          shift)
        if kind == PERIODIC:
            L = subgroup_reduce(self.group, self.closure.param("lattice", ()))
            rep = L.reduce(g)
            return self.support.get(rep, self.space.empty_map())
        if kind == COSET:
            return coset_map(self, g)
        raise MalformedInput(f"unknown closure {kind!r}")

    def domain(self, g):
        """The domain of the map for g (written D_{-g} or X_{-g})."""
        return self.map(g).domain

    def range(self, g):
        return self.map(g).range

    def order(self, x):
        return self.space.order(x)

    def points(self):
        if not isinstance(self.space, FiniteSpace):
            raise MalformedInput("points() needs a finite space")
        return list(self.space.labels)

    def with_support(self, support, cone_only=None, closure=None, name=None):
        return ActionSystem(self.group, self.space, dict(support),
                            self.cone_only if cone_only is None else cone_only,
                            self.closure if closure is None else closure,
                            self.name if name is None else name)


def coset_map(sys, g):
    from .spaces import FiniteMap

    desc = sys.group
    fwd = {}
    for points, phi, H in sys.closure.param("components", ()):
        for x in points:
            for y in points:
                if H.__contains__(desc.sub(g, desc.sub(phi[y], phi[x]))):
                    fwd[x] = y
    return FiniteMap(fwd, {v: k for k, v in fwd.items()})


# reports


@dataclass
class Verdict:
    name: str
    passed: bool
    witness: Optional[dict] = None
    failures: list = field(default_factory=list)

    def to_json(self, fmt):
        out = {"passed": self.passed}
        if self.witness is not None:
            out["witness"] = fmt(self.witness)
        if self.failures:
            out["failure_count"] = len(self.failures)
        return out


class _Report:
    verdicts: dict

    def __getitem__(self, key):
        return self.verdicts[key]

    @property
    def ok(self):
        return all(v.passed for v in self.verdicts.values())

    def to_json(self, fmt):
        return {k: v.to_json(fmt) for k, v in self.verdicts.items()}


CONDITIONS = ("1a", "1b", "1prime", "2", "3")
IMPLICATIONS = ("I&II=>III", "I&III=>II", "II&III=>I")


@dataclass
class AxiomReport(_Report):
    verdicts: dict

    @property
    def definition_holds(self):
        return all(self.verdicts[k].passed for k in ("1a", "1b", "2", "3"))

    @property
    def third_arrow_holds(self):
        return all(self.verdicts[k].passed for k in IMPLICATIONS)


@dataclass
class PropertyReport(_Report):
    verdicts: dict

    @property
    def free(self):
        return self.verdicts["free"].passed

    @property
    def non_degenerate(self):
        return self.verdicts["non_degenerate"].passed

    @property
    def composition(self):
        return self.verdicts["composition"].passed

    @property
    def domain_ordering(self):
        return self.verdicts["domain_ordering"].passed


def _witness(sys, A, B, **extra):
    hit = difference_witness(A, B, sys.order)
    if hit is None:
        return None
    point, cell = hit
    w = dict(extra)
    w["point"] = point
    if cell is not None:
        w["cell"] = cell
    return w


def _equal_witness(sys, A, B, **extra):
    w = _witness(sys, A, B, **extra)
    if w is None:
        w = _witness(sys, B, A, **extra)
    return w


class _Collector:
    def __init__(self, names):
        self.found = {n: [] for n in names}

    def add(self, name, w):
        if w is not None:
            self.found[name].append(w)

    def verdicts(self):
        return {n: Verdict(n, not ws, ws[0] if ws else None, ws)
                for n, ws in self.found.items()}


def pairs(sys):
    elems = sys.elements()
    return [(s, t) for s in elems for t in elems]


def check_axioms(sys: ActionSystem) -> AxiomReport:
    """Evaluate 1a, 1b, 1', 2, 3 and the three third-arrow implications.

    ``s`` and ``t`` range over declared elements (cone elements only when the
    system is cone-only); ``s + t`` is resolved through the closure rule.
    Failures are listed in lexicographic (s, t) order, the first one being
    the reported witness.
    """
    desc = sys.group
    col = _Collector(CONDITIONS + IMPLICATIONS)
    X = sys.space.whole()
    ident = sys.space.identity()
    a0 = sys.map(desc.zero())
    col.add("3", _equal_witness(sys, X, a0.agreement(ident),
                                s=desc.zero(), t=desc.zero()))
    for s, t in pairs(sys):
        fs, ft, fst = sys.map(s), sys.map(t), sys.map(desc.add(s, t))
        key = {"s": s, "t": t}
        # 1a: a_s(D_{-s} & D_t) = D_s & D_{s+t}
        lhs = fs.image(ft.range)
        rhs = fs.range.intersect(fst.range)
        col.add("1a", _equal_witness(sys, lhs, rhs, **key))
        # 1': the inclusion half of 1a
        col.add("1prime", _witness(sys, lhs, fst.range, **key))
        # 1b: a_t(D_{-t} & D_{-s-t}) = D_t & D_{-s}
        lhs = ft.image(fst.domain)
        rhs = ft.range.intersect(fs.domain)
        col.add("1b", _equal_witness(sys, lhs, rhs, **key))
        st = fs.compose(ft)
        agree = st.agreement(fst)
        both = ft.domain.intersect(fst.domain)
        # 2 and I&III=>II: on D_{-t} & D_{-s-t}, a_s a_t is defined and
        # equals a_{s+t}
        w = _witness(sys, both, agree, **key)
        col.add("2", w)
        col.add("I&III=>II", w)
        col.add("I&II=>III", _witness(sys, st.domain, agree, **key))
        back = fs.inverse().compose(fst)
        col.add("II&III=>I",
                _witness(sys, back.domain, back.agreement(ft), **key))
    return AxiomReport(col.verdicts())


def check_properties(sys: ActionSystem) -> PropertyReport:
    desc = sys.group
    col = _Collector(("free", "composition", "domain_ordering"))
    zero = desc.zero()
    for t in sys.elements():
        if t == zero:
            continue
        f = sys.map(t)
        fixed = f.agreement(sys.space.identity())
        if not fixed.is_empty():
            col.add("free", _witness(sys, fixed, sys.space.empty(), t=t))
    cone = sys.cone_elements()
    for s in cone:
        for t in cone:
            fs, ft = sys.map(s), sys.map(t)
            fst = sys.map(desc.add(s, t))
            st = fs.compose(ft)
            if st != fst:
                agree = st.agreement(fst)
                union = st.domain.union(fst.domain)
                col.add("composition",
                        _witness(sys, union, agree, s=s, t=t))
            col.add("domain_ordering",
                    _witness(sys, fst.domain, ft.domain, s=s, t=t))
    verdicts = col.verdicts()
    verdicts["non_degenerate"] = _non_degenerate(sys)
    order = ("free", "non_degenerate", "composition", "domain_ordering")
    return PropertyReport({k: verdicts[k] for k in order})


def _non_degenerate(sys):
    """Nonempty cone elements must generate the group.

    For Z^d the target is Z^d itself.  For the rational line no finite set
    generates Q, so the target is the subgroup generated by the whole
    declared support.
    """
    desc = sys.group
    live = [g for g in sys.cone_elements() if not sys.map(g).is_empty()]
    H = subgroup_reduce(desc, live)
    if desc.kind == ZD:
        ok = subgroup_equals_group(H)
    else:
        ok = H == subgroup_reduce(desc, sys.elements())
    w = None if ok else {"generated": list(H.basis)}
    return Verdict("non_degenerate", ok, w, [w] if w else [])


def replay_third_arrow(sys, s, t, x):
    """Pointwise evaluation of the three statements at (s, t, x).

    Returns a dict with the truth of each implication at this point; used to
    replay witnesses independently of the region algebra.
    """
    desc = sys.group
    fs, ft, fst = sys.map(s), sys.map(t), sys.map(desc.add(s, t))
    y = ft.apply(x)
    z3 = fst.apply(x)
    out = {}
    # I & II => III
    z = fs.apply(y) if y is not None else None
    out["I&II=>III"] = z is None or z3 == z
    # I & III => II
    out["I&III=>II"] = y is None or z3 is None or fs.apply(y) == z3
    # II & III => I
    yy = fs.apply_inverse(z3) if z3 is not None else None
    out["II&III=>I"] = yy is None or y == yy
    return out


def system_points(sys, extra_regions=()):
    """Sample points that decide every pointwise condition of the system.

    Finite backend: all points.  Interval backend: the arrangement of all
    domains and ranges of declared elements and pairwise sums, pulled back
    through every declared translation.
    """
    from .spaces import arrangement_points

    if isinstance(sys.space, FiniteSpace):
        return sys.points()
    desc = sys.group
    regions = [sys.space.whole()]
    elems = sys.elements()
    maps = [sys.map(g) for g in elems]
    maps += [sys.map(desc.add(s, t)) for s in elems for t in elems]
    shifts = {f.shift for f in maps}
    base = []
    for f in maps:
        base.append(f.domain)
        base.append(f.range)
    for R in base:
        for sh in shifts:
            regions.append(R.translate(-sh))
            regions.append(R.translate(sh))
    regions.extend(extra_regions)
    return arrangement_points(regions)
