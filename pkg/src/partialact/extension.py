"""Extending a cone partial action to the whole group.

For a totally ordered group the extension is forced: the map for -t is the
inverse of the map for t.

For a general group the solver builds the orbit graph (an edge x -> a_s(x)
labelled s for every declared s, walkable backwards with label -s), picks a
BFS spanning tree per component with potential ``phi`` (0 at the root), and
collects the cycle subgroup H generated by ``phi(u) + s - phi(v)`` over the
non-tree edges.  The label sums of walks from x to y are exactly the coset
``phi(y) - phi(x) + H``.  Hence a zero-sum walk moves some point iff two
distinct points of a component have potentials in the same H-coset; if no
such pair exists the extension is ``g -> {(x, y) : g in phi(y) - phi(x) + H}``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .actions import ActionSystem, Closure, COSET, check_axioms
from .errors import PreconditionError, UnsupportedBackend, ValidationError
from .groups import cone_contains, is_totally_ordering, subgroup_reduce
from .spaces import FiniteSpace


def _require_valid(sys, what):
    report = check_axioms(sys)
    for name, v in report.verdicts.items():
        if not v.passed:
            raise ValidationError(f"{what}: condition {name} fails",
                                  [v.witness])
    return report


def extend_total_order(sys: ActionSystem) -> ActionSystem:
    """Add the inverse of every declared map at the negated element."""
    if not is_totally_ordering(sys.group):
        raise PreconditionError("the cone does not totally order the group")
    bad = [g for g in sys.elements() if not cone_contains(sys.group, g)]
    if bad:
        raise PreconditionError("support leaves the cone", bad)
    _require_valid(sys, "cone system is not a partial action")
    support = dict(sys.support)
    for t in sys.elements():
        support[sys.group.neg(t)] = sys.map(t).inverse()
    return sys.with_support(support, cone_only=False,
                            name=f"{sys.name}+total" if sys.name else "")


@dataclass
class Step:
    g: object
    inverse: bool
    source: str
    target: str


@dataclass
class ExtensionWitness:
    """Two distinct points joined by a walk whose labels sum to zero."""

    x: str
    y: str
    walk: list

    def label_sum(self, desc):
        total = desc.zero()
        for step in self.walk:
            total = desc.add(total, desc.neg(step.g) if step.inverse
                             else step.g)
        return total


@dataclass
class Component:
    points: list
    phi: dict
    H: object
    tree: dict = field(repr=False, default_factory=dict)
    cycles: list = field(repr=False, default_factory=list)


@dataclass
class ExtensionResult:
    system: ActionSystem
    components: list
    H: object

    @property
    def phi(self):
        out = {}
        for comp in self.components:
            out.update(comp.phi)
        return out


@dataclass
class OrbitGraph:
    components: list

    def component_of(self, x):
        for comp in self.components:
            if x in comp.phi:
                return comp
        raise KeyError(x)


def orbit_graph(sys: ActionSystem) -> OrbitGraph:
    if not isinstance(sys.space, FiniteSpace):
        raise UnsupportedBackend("orbit graphs need the finite backend")
    desc = sys.group
    zero = desc.zero()
    adj = {x: [] for x in sys.points()}
    for s in sys.elements():
        if s == zero:
            continue
        for x, y in sys.map(s).pairs(sys.order):
            adj[x].append((y, s, False))
            adj[y].append((x, s, True))
    seen = set()
    components = []
    for root in sys.points():
        if root in seen:
            continue
        phi = {root: zero}
        tree = {root: None}
        cycles = []
        used = set()
        queue = deque([root])
        seen.add(root)
        while queue:
            u = queue.popleft()
            for v, s, inv in adj[u]:
                label = desc.neg(s) if inv else s
                edge = (v, u, s) if inv else (u, v, s)
                if v not in seen:
                    seen.add(v)
                    phi[v] = desc.add(phi[u], label)
                    tree[v] = (u, Step(s, inv, u, v))
                    used.add(edge)
                    queue.append(v)
                elif edge not in used:
                    used.add(edge)
                    a, b, g = edge
                    cycles.append((edge, desc.sub(desc.add(phi[a], g),
                                                  phi[b])))
        H = subgroup_reduce(desc, [z for _, z in cycles])
        pts = sorted(phi, key=sys.order)
        components.append(Component(pts, phi, H, tree, cycles))
    return OrbitGraph(components)


def _path_to_root(comp, x):
    steps = []
    while comp.tree[x] is not None:
        parent, step = comp.tree[x]
        steps.append(step)
        x = parent
    return steps


def _reverse(step):
    return Step(step.g, not step.inverse, step.target, step.source)


def tree_path(comp, x, y):
    """Walk from x to y inside the spanning tree."""
    up = _path_to_root(comp, x)
    down = _path_to_root(comp, y)
    while up and down and up[-1] is down[-1]:
        up.pop()
        down.pop()
    return [_reverse(s) for s in up] + [s for s in reversed(down)]


def _cycle_at(comp, base, edge, times):
    u, v, s = edge
    loop = tree_path(comp, base, u) + [Step(s, False, u, v)] + \
        tree_path(comp, v, base)
    if times < 0:
        loop = [_reverse(s) for s in reversed(loop)]
    return loop * abs(times)


def _collision(sys, comp):
    buckets = {}
    for x in comp.points:
        buckets.setdefault(comp.H.reduce(comp.phi[x]), []).append(x)
    best = None
    for pts in buckets.values():
        if len(pts) > 1:
            pair = (pts[0], pts[1])
            key = (sys.order(pair[0]), sys.order(pair[1]))
            if best is None or key < best[0]:
                best = (key, pair)
    return None if best is None else best[1]


def extend_group(sys: ActionSystem, widen: int = 0):
    """Return an :class:`ExtensionResult` or an :class:`ExtensionWitness`.

    The extended system resolves every group element exactly through its
    coset closure.  Its declared support is the finite window
    ``{phi(y) - phi(x) + sum k_j h_j : |k_j| <= widen}`` over pairs in one
    component and the basis h_j of H, keeping elements with nonempty maps.
    """
    if not isinstance(sys.space, FiniteSpace):
        raise UnsupportedBackend("extension needs the finite backend")
    _require_valid(sys, "cone system is not a partial action")
    desc = sys.group
    graph = orbit_graph(sys)
    best = None
    for comp in graph.components:
        pair = _collision(sys, comp)
        if pair is not None:
            key = (sys.order(pair[0]), sys.order(pair[1]))
            if best is None or key < best[0]:
                best = (key, pair, comp)
    if best is not None:
        _, (x, y), comp = best
        walk = tree_path(comp, x, y)
        h = desc.sub(comp.phi[y], comp.phi[x])
        coeffs = comp.H.express(h)
        for (edge, _), c in zip(comp.cycles, coeffs):
            if c:
                walk += _cycle_at(comp, y, edge, -c)
        return ExtensionWitness(x, y, walk)

    params = tuple((tuple(c.points), dict(c.phi), c.H)
                   for c in graph.components)
    closure = Closure(COSET, (("components", params),))
    ext = ActionSystem(desc, sys.space, {}, False, closure,
                       name=f"{sys.name}+ext" if sys.name else "")
    support = {}
    for g in _window(desc, graph.components, widen):
        f = ext.map(g)
        if not f.is_empty():
            support[g] = f
    for g in sys.elements():
        support[g] = ext.map(g)
    ext = ActionSystem(desc, sys.space, support, False, closure, ext.name)
    H = subgroup_reduce(desc, [h for c in graph.components
                               for h in c.H.basis])
    return ExtensionResult(ext, graph.components, H)


def _window(desc, components, widen):
    out = set()
    for comp in components:
        diffs = {desc.sub(comp.phi[y], comp.phi[x])
                 for x in comp.points for y in comp.points}
        basis = list(comp.H.basis)
        if not basis or widen <= 0:
            out |= diffs
            continue
        for ks in product(range(-widen, widen + 1), repeat=len(basis)):
            shift = desc.zero()
            for k, h in zip(ks, basis):
                shift = desc.add(shift, desc.scale(k, h))
            out |= {desc.add(d, shift) for d in diffs}
    return sorted(out, key=desc.key)


def replay_walk(sys: ActionSystem, x, walk):
    """Follow a walk from x; returns the end point or None if it breaks."""
    for step in walk:
        f = sys.map(step.g)
        x = f.apply_inverse(x) if step.inverse else f.apply(x)
        if x is None:
            return None
    return x
