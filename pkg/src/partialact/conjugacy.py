"""Conjugacy of free, domain-ordered partial actions of Z+ on finite sets.

Domain ordering forces a_k = a_1^k, and freeness rules out cycles, so the
graph of a_1 is a disjoint union of chains.  Two such systems are conjugate
exactly when their multisets of chain lengths agree; the conjugating
bijection walks matching chains in step.
"""
from __future__ import annotations

from dataclasses import dataclass

from .actions import ActionSystem, check_axioms, check_properties
from .errors import (FreenessError, PreconditionError, UnsupportedBackend,
                     ValidationError)
from .groups import RATIONAL_LINE, Zd, subgroup_reduce
from .spaces import FiniteSpace


@dataclass(frozen=True)
class ChainProfile:
    lengths: tuple                     # non-increasing
    chains: tuple = ()                 # each chain in a_1 order

    def __eq__(self, other):
        return isinstance(other, ChainProfile) and \
            self.lengths == other.lengths

    def __hash__(self):
        return hash(self.lengths)


def integer_rescale(sys: ActionSystem) -> ActionSystem:
    """Reindex a rational-line system by multiples of its smallest step.

    The declared support generates a cyclic group <d>; the result declares
    k -> a_(k d) on Z.
    """
    if sys.group == Zd(1):
        return sys
    if sys.group.kind != RATIONAL_LINE:
        raise PreconditionError("only rational-line systems can be rescaled")
    d = subgroup_reduce(sys.group, sys.elements()).basis
    step = d[0] if d else 1
    support = {(int(g / step),): f for g, f in sys.support.items()}
    return ActionSystem(Zd(1), sys.space, support, sys.cone_only,
                        name=sys.name)


def _check_preconditions(sys: ActionSystem):
    if not isinstance(sys.space, FiniteSpace):
        raise UnsupportedBackend("conjugacy needs the finite backend")
    if sys.group != Zd(1):
        raise PreconditionError("conjugacy is decided for the group Z only")
    report = check_axioms(sys)
    for name, v in report.verdicts.items():
        if not v.passed:
            raise ValidationError(f"condition {name} fails", [v.witness])
    props = check_properties(sys)
    if not props.free:
        raise FreenessError("the action is not free", props["free"].witness)
    if not props.domain_ordering:
        raise PreconditionError("domain ordering fails",
                                props["domain_ordering"].witness)


def chain_profile(sys: ActionSystem, check: bool = True) -> ChainProfile:
    if check:
        _check_preconditions(sys)
    step = sys.map((1,))
    starts = [x for x in sys.points() if step.apply_inverse(x) is None]
    chains, seen = [], set()
    for x in starts:
        chain = [x]
        while (y := step.apply(chain[-1])) is not None:
            chain.append(y)
        seen.update(chain)
        chains.append(tuple(chain))
    left = [x for x in sys.points() if x not in seen]
    if left:
        raise FreenessError("a_1 has a cycle", ((1,), left[0]))
    chains.sort(key=len, reverse=True)   # stable: ties keep label order
    return ChainProfile(tuple(len(c) for c in chains), tuple(chains))


def verify_conjugacy(tau: dict, A: ActionSystem, B: ActionSystem):
    """First (k, x) where tau fails to conjugate A into B, or None."""
    if sorted(tau) != sorted(A.points()) or \
            sorted(tau.values()) != sorted(B.points()):
        return ("bijection", None)
    ks = sorted(set(A.elements()) | set(B.elements()))
    for k in ks:
        a, b = A.map(k), B.map(k)
        if {tau[x] for x in a.domain} != set(b.domain):
            return (k, "domain")
        if {tau[x] for x in a.range} != set(b.range):
            return (k, "range")
        for x in sorted(a.domain, key=A.order):
            if tau[a.apply(x)] != b.apply(tau[x]):
                return (k, x)
    return None


def decide_conjugacy(A: ActionSystem, B: ActionSystem):
    """A bijection tau with tau o a_k = b_k o tau for all k, or None."""
    pa, pb = chain_profile(A), chain_profile(B)
    if pa != pb:
        return None
    tau = {}
    for ca, cb in zip(pa.chains, pb.chains):
        tau.update(zip(ca, cb))
    bad = verify_conjugacy(tau, A, B)
    if bad is not None:
        raise ValidationError("assembled bijection fails the replay", [bad])
    return tau


@dataclass
class IdealInvariants:
    counts: tuple        # |X_k|, k = 1..k_max
    cocounts: tuple      # |X_(-k)|
    pairings: tuple      # sorted (y, a_k(y)) per k

    def numbers(self):
        return (self.counts, self.cocounts)

    def to_json(self):
        return {"counts": list(self.counts), "cocounts": list(self.cocounts),
                "pairings": [[list(p) for p in ps] for ps in self.pairings]}


def ideal_invariants(sys: ActionSystem, k_max: int,
                     check: bool = True) -> IdealInvariants:
    if check:
        _check_preconditions(sys)
    counts, cocounts, pairings = [], [], []
    for k in range(1, k_max + 1):
        f = sys.map((k,))
        counts.append(len(f.range))
        cocounts.append(len(f.domain))
        pairings.append(tuple(f.pairs(sys.order)))
    return IdealInvariants(tuple(counts), tuple(cocounts), tuple(pairings))


def profile_from_counts(n_points: int, counts) -> tuple:
    """Recover chain lengths: count_(k-1) - count_k chains are longer than k-1.

    ``counts`` must run far enough to reach 0.
    """
    full = [n_points] + list(counts) + [0]
    longer = [full[k] - full[k + 1] for k in range(len(full) - 1)]
    lengths = []
    for k in range(len(longer)):
        exact = longer[k] - (longer[k + 1] if k + 1 < len(longer) else 0)
        lengths += [k + 1] * exact
    return tuple(sorted(lengths, reverse=True))
