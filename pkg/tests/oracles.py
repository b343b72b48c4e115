"""Brute-force reference computations shared by the test modules."""
import random

from partialact.generators import (chain_system, chains_for_partition,
                                   labeled_chain_forests, partitions)


def graphs(sys, ks):
    return {k: set(sys.map(k).pairs()) for k in ks}


def brute_conjugacy(A, B):
    """Search bijections A -> B point by point.

    A partial assignment is abandoned as soon as some a_k edge or domain
    membership among assigned points is not matched in B.
    """
    pa, pb = A.points(), B.points()
    if len(pa) != len(pb):
        return None
    ks = sorted(set(A.elements()) | set(B.elements()))
    ga, gb = graphs(A, ks), graphs(B, ks)
    da = {k: {x for x, _ in ga[k]} for k in ks}
    db = {k: {x for x, _ in gb[k]} for k in ks}
    ra = {k: {y for _, y in ga[k]} for k in ks}
    rb = {k: {y for _, y in gb[k]} for k in ks}
    tau, used = {}, set()

    def fits(x, u):
        for k in ks:
            if (x in da[k]) != (u in db[k]) or (x in ra[k]) != (u in rb[k]):
                return False
            for y, v in tau.items():
                if ((x, y) in ga[k]) != ((u, v) in gb[k]):
                    return False
                if ((y, x) in ga[k]) != ((v, u) in gb[k]):
                    return False
        return True

    def search(i):
        if i == len(pa):
            return True
        x = pa[i]
        for u in pb:
            if u not in used and fits(x, u):
                tau[x] = u
                used.add(u)
                if search(i + 1):
                    return True
                del tau[x]
                used.discard(u)
        return False

    return dict(tau) if search(0) else None


def replays(tau, A, B):
    """tau o a_k = b_k o tau with matching domains, for every declared k."""
    for k in set(A.elements()) | set(B.elements()):
        a, b = A.map(k), B.map(k)
        if {tau[x] for x, _ in a.pairs()} != {u for u, _ in b.pairs()}:
            return False
        if {(tau[x], tau[y]) for x, y in a.pairs()} != set(b.pairs()):
            return False
    return True


def conjugacy_family(max_points=7, labelled_upto=4, seed=0):
    """Free, domain-ordered chain systems grouped by point count.

    All labellings up to ``labelled_upto`` points; above that every
    partition with two labellings (sorted and shuffled).
    """
    rng = random.Random(seed)
    family = {}
    for n in range(1, max_points + 1):
        if n <= labelled_upto:
            family[n] = [chain_system(c) for c in labeled_chain_forests(n)]
            continue
        labels = [str(k) for k in range(n)]
        out = []
        for parts in partitions(n):
            shuffled = labels[:]
            rng.shuffle(shuffled)
            for order in (labels, shuffled):
                out.append(chain_system(chains_for_partition(parts, order),
                                        tuple(labels)))
        family[n] = out
    return family
