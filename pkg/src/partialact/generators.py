"""Random and exhaustive families of finite systems and polynomials.

Everything takes an explicit ``random.Random`` so runs are reproducible from
a seed.
"""
from __future__ import annotations

import random
from itertools import permutations, product

from .actions import ActionSystem
from .crossed import CrossedPoly
from .gaussian import GQ
from .groups import Zd, cone_contains
from .spaces import FiniteSpace


def _labels(n):
    return tuple(str(k) for k in range(n))


def translation_system(coords, rank: int, name: str = "") -> ActionSystem:
    """Translations of Z^rank restricted to a finite set U of lattice points.

    Every nonnegative difference of two points of U is declared, so the
    empty closure loses nothing.
    """
    coords = [tuple(c) for c in coords]
    X = FiniteSpace(tuple("p" + "_".join(map(str, c)) for c in coords))
    label = dict(zip(coords, X.labels))
    present = set(coords)
    shifts = {tuple(b - a for a, b in zip(u, v))
              for u in coords for v in coords}
    support = {}
    for s in sorted(shifts):
        if not all(c >= 0 for c in s):
            continue
        pairs = [(label[u], label[tuple(a + b for a, b in zip(u, s))])
                 for u in coords
                 if tuple(a + b for a, b in zip(u, s)) in present]
        support[s] = X.map_from_pairs(pairs)
    return ActionSystem(Zd(rank), X, support, True, name=name)


def random_translation_system(rng: random.Random, rank=None, size=None):
    rank = rank or rng.choice((1, 1, 2))
    side = 7 if rank == 1 else 3
    cells = list(product(range(side), repeat=rank))
    k = size or rng.randint(1, min(6, len(cells)))
    return translation_system(rng.sample(cells, k), rank, "translation")


def _random_injection(rng, labels, density):
    dom = [x for x in labels if rng.random() < density]
    rng.shuffle(dom)
    targets = rng.sample(list(labels), len(dom))
    return list(zip(sorted(dom), targets))


def perturb(sys: ActionSystem, rng: random.Random, edits: int = 1):
    """Delete or add one pair in some nonzero declared map, keeping
    injectivity and the identity at 0."""
    support = dict(sys.support)
    zero = sys.group.zero()
    elems = [g for g in sys.elements() if g != zero]
    if not elems:
        return sys
    X = sys.space
    for _ in range(edits):
        g = rng.choice(elems)
        pairs = dict(support[g].pairs())
        if pairs and rng.random() < 0.5:
            del pairs[rng.choice(sorted(pairs))]
        else:
            free_src = [x for x in X.labels if x not in pairs]
            used = set(pairs.values())
            free_dst = [y for y in X.labels if y not in used]
            if free_src and free_dst:
                pairs[rng.choice(free_src)] = rng.choice(free_dst)
        support[g] = X.map_from_pairs(sorted(pairs.items()))
    return sys.with_support(support, name="perturbed")


def random_finite_system(rng: random.Random, n=None, rank=1, elems=None,
                         density=0.5):
    """Arbitrary partial injections for a few cone elements."""
    n = n or rng.randint(1, 5)
    X = FiniteSpace(_labels(n))
    if elems is None:
        pool = [g for g in product(range(3), repeat=rank) if any(g)]
        elems = rng.sample(pool, rng.randint(1, min(3, len(pool))))
    support = {g: X.map_from_pairs(_random_injection(rng, X.labels, density))
               for g in elems}
    return ActionSystem(Zd(rank), X, support, True, name="random")


def mixed_systems(rng: random.Random, count: int):
    """A mix of valid, perturbed and arbitrary systems, in that rotation."""
    out = []
    for i in range(count):
        kind = i % 3
        if kind == 0:
            out.append(random_translation_system(rng))
        elif kind == 1:
            out.append(perturb(random_translation_system(rng), rng,
                               rng.randint(1, 2)))
        else:
            out.append(random_finite_system(rng, rank=rng.choice((1, 2))))
    return out


# chain forests on Z+

def chain_system(chains, labels=None, name="chains") -> ActionSystem:
    """a_1 walks each chain one step; a_k = a_1^k is declared for every k
    below the longest chain."""
    pts = labels or tuple(sorted((x for c in chains for x in c), key=_num))
    X = FiniteSpace(tuple(pts))
    longest = max((len(c) for c in chains), default=1)
    support = {}
    for k in range(1, max(longest, 2)):
        pairs = [(c[j], c[j + k]) for c in chains for j in range(len(c) - k)]
        support[(k,)] = X.map_from_pairs(pairs)
    return ActionSystem(Zd(1), X, support, True, name=name)


def _num(x):
    try:
        return (0, int(x))
    except ValueError:
        return (1, x)


def labeled_chain_forests(n: int):
    """Every way to split n labelled points into disjoint ordered chains."""
    seen = set()
    labels = _labels(n)
    for perm in permutations(labels):
        for cuts in product((False, True), repeat=max(n - 1, 0)):
            chains, cur = [], [perm[0]] if n else []
            for x, cut in zip(perm[1:], cuts):
                if cut:
                    chains.append(tuple(cur))
                    cur = [x]
                else:
                    cur.append(x)
            if cur:
                chains.append(tuple(cur))
            key = frozenset(chains)
            if key not in seen:
                seen.add(key)
                yield sorted(chains)


def partitions(n: int, largest=None):
    largest = largest or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def chains_for_partition(parts, order):
    out, i = [], 0
    for k in parts:
        out.append(tuple(order[i:i + k]))
        i += k
    return out


def exhaustive_chain_systems(max_points: int, labelled_upto: int = 4):
    """Chain-forest systems on 1..max_points points.

    Every labelling is produced up to ``labelled_upto`` points; above that,
    one labelling per partition of the point count.
    """
    for n in range(1, max_points + 1):
        if n <= labelled_upto:
            for chains in labeled_chain_forests(n):
                yield chain_system(chains)
        else:
            labels = _labels(n)
            for parts in partitions(n):
                yield chain_system(chains_for_partition(parts, labels))


# polynomials

def random_poly(sys: ActionSystem, rng: random.Random, terms: int = 3,
                analytic: bool = False, values=(-2, -1, 1, 2, 3)):
    elems = [g for g in sys.elements() if not sys.map(g).is_empty()]
    if analytic:
        elems = [g for g in elems if cone_contains(sys.group, g)]
    out = {}
    for _ in range(rng.randint(1, terms)):
        g = rng.choice(elems)
        ran = sorted(sys.range(g), key=sys.order)
        pts = rng.sample(ran, rng.randint(1, min(3, len(ran))))
        out.setdefault(g, {}).update(
            {x: GQ(rng.choice(values), rng.choice((0, 0, 1, -1)))
             for x in pts})
    return CrossedPoly(out, sys.group)
