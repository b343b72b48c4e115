"""Builders for the worked example systems, at finite scale.

Points of the binary examples are the integers ``0 .. 2**i - 1`` written as
strings.  A tuple ``(x_1, ..., x_i)`` of bits is the integer
``sum x_k 2**(k-1)``, so the first coordinate is the low bit and the
odometer is ``k -> k + 1 mod 2**i``.
"""
from __future__ import annotations

from fractions import Fraction

from .actions import ActionSystem, Closure, PERIODIC, TRANSLATE
from .errors import MalformedInput
from .groups import Zd, format_fraction, rational_line
from .spaces import FiniteSpace, IntervalRegion, IntervalSpace


def _binary_space(i):
    return FiniteSpace(tuple(str(k) for k in range(2 ** i)))


def _int_map(space, mapping):
    return space.map_from_pairs([(str(a), str(b)) for a, b in mapping])


def _level(i, least=1):
    if isinstance(i, bool) or not isinstance(i, int) or i < least:
        raise MalformedInput(f"level must be an integer >= {least}")
    return i


def standard(i: int) -> ActionSystem:
    """Partial odometer on 2**i points: a_k(j) = j + k while j + k < 2**i."""
    _level(i)
    n = 2 ** i
    X = _binary_space(i)
    support = {(k,): _int_map(X, [(j, j + k) for j in range(n - k)])
               for k in range(n)}
    return ActionSystem(Zd(1), X, support, True, name=f"standard({i})")


def refine(i: int) -> ActionSystem:
    """Grid {j / 2**i} with translations by k / 2**i that stay below 1."""
    _level(i)
    n = 2 ** i
    labels = [format_fraction(Fraction(j, n)) for j in range(n)]
    X = FiniteSpace(tuple(labels))
    support = {}
    for k in range(n):
        pairs = [(labels[j], labels[j + k]) for j in range(n - k)]
        support[Fraction(k, n)] = X.map_from_pairs(pairs)
    return ActionSystem(rational_line(), X, support, True,
                        name=f"refine({i})")


def arc(a=0, b=1, c=Fraction(157, 25), kmax: int = 12) -> ActionSystem:
    """Arc (a, b) on a circle of circumference c, acted on by rotations.

    The map for n is rotation by n restricted to the points that stay in the
    arc.  Undeclared n follow the same rule, so sums are exact.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    Xr = IntervalRegion.from_intervals([(a, b)], c)
    space = IntervalSpace(Xr)
    support = {}
    for n in range(kmax + 1):
        support[(n,)] = space.translation(Xr.intersect(Xr.translate(-n)), n)
    return ActionSystem(Zd(1), space, support, True, Closure(TRANSLATE),
                        name="arc")


def _split_domain(variant, t):
    half = Fraction(1, 2)
    if variant == 0 or t >= half:
        return (Fraction(0), 1 - t)
    if variant == 1:
        return (Fraction(0), half)
    if variant == 2:
        return (half - t, 1 - t)
    return (half - t, half)


def split1a1b(variant: int) -> ActionSystem:
    """Translations on (0, 1) by multiples of 1/8 with parts of the graph
    deleted.

    variant 0: the unmodified translation system;
    variant 1: pairs (x, y) with x >= 1/2, x != y removed;
    variant 2: pairs with y <= 1/2, x != y removed;
    variant 3: pairs with (y <= 1/2 or x >= 1/2), x != y removed.
    """
    if variant not in (0, 1, 2, 3):
        raise MalformedInput("split1a1b variant must be 0, 1, 2 or 3")
    Xr = IntervalRegion.from_intervals([(0, 1)])
    space = IntervalSpace(Xr)
    support = {}
    for k in range(8):
        t = Fraction(k, 8)
        if k == 0:
            support[t] = space.identity()
            continue
        lo, hi = _split_domain(variant, t)
        support[t] = space.translation(
            IntervalRegion.from_intervals([(lo, hi)]), t)
    return ActionSystem(rational_line(), space, support, True,
                        name=f"split1a1b({variant})")


def evenodd(period: int = 8) -> ActionSystem:
    """Integer translations of the circle R / period*Z.

    Odd translations are restricted to the union of the open cells
    (a, a + 1/2); even ones act on the whole circle.  The map for n depends
    only on n mod period.
    """
    if period < 2 or period % 2:
        raise MalformedInput("period must be an even integer >= 2")
    c = Fraction(period)
    Xr = IntervalRegion.from_intervals("circle", c)
    space = IntervalSpace(Xr)
    half = IntervalRegion.from_intervals(
        [(a, a + Fraction(1, 2)) for a in range(period)], c)
    support = {}
    for n in range(period):
        dom = Xr if n % 2 == 0 else half
        support[(n,)] = space.translation(dom, n)
    return ActionSystem(Zd(1), space, support, True,
                        Closure(PERIODIC, (("lattice", ((period,),)),)),
                        name="evenodd")


def no_ext() -> ActionSystem:
    X = FiniteSpace(tuple(str(k) for k in range(1, 8)))
    support = {
        (1, 0, 0): _int_map(X, [(1, 2), (5, 4)]),
        (0, 1, 0): _int_map(X, [(3, 2), (5, 6)]),
        (0, 0, 1): _int_map(X, [(3, 4), (7, 6)]),
    }
    return ActionSystem(Zd(3), X, support, True, name="no_ext")


def odometer_power(i: int, k: int, points=None):
    n = 2 ** i
    pts = range(n) if points is None else points
    return [(x, (x + k) % n) for x in pts]


def toroidal_cone(i: int) -> ActionSystem:
    """Cone system on Z^2: e1 is the odometer on the even points, e2 its
    inverse on the even points."""
    _level(i)
    n = 2 ** i
    X = _binary_space(i)
    even = range(0, n, 2)
    support = {
        (1, 0): _int_map(X, odometer_power(i, 1, even)),
        (0, 1): _int_map(X, odometer_power(i, -1, even)),
    }
    return ActionSystem(Zd(2), X, support, True, name=f"toroidal_cone({i})")


def toroidal_ext(i: int) -> ActionSystem:
    """The extension to Z^2, declared on the window |a| <= 2**(i-1).

    a e1 - a e2        -> odometer^(2a) on all points
    (a+1) e1 - a e2    -> odometer^(2a+1) on the even points
    a e1 - (a+1) e2    -> odometer^(2a+1) on the odd points
    Every other element carries the empty map.  Because the odometer has
    order 2**i the table is periodic under 2**(i-1) (e1 - e2).
    """
    _level(i)
    n, m = 2 ** i, 2 ** (i - 1)
    X = _binary_space(i)
    even, odd = range(0, n, 2), range(1, n, 2)
    support = {}
    for a in range(-m, m + 1):
        support[(a, -a)] = _int_map(X, odometer_power(i, 2 * a))
        support[(a + 1, -a)] = _int_map(X, odometer_power(i, 2 * a + 1, even))
        support[(a, -a - 1)] = _int_map(X, odometer_power(i, 2 * a + 1, odd))
    closure = Closure(PERIODIC, (("lattice", ((m, -m),)),))
    return ActionSystem(Zd(2), X, support, False, closure,
                        name=f"toroidal_ext({i})")


def bd_odometer(i: int) -> ActionSystem:
    """Full cyclic odometer action of Z on 2**i points."""
    _level(i)
    n = 2 ** i
    X = _binary_space(i)
    support = {(k,): _int_map(X, odometer_power(i, k))
               for k in range(-n, n + 1)}
    closure = Closure(PERIODIC, (("lattice", ((n,),)),))
    return ActionSystem(Zd(1), X, support, False, closure,
                        name=f"bd_odometer({i})")


BUILDERS = {
    "standard": standard,
    "refine": refine,
    "arc": arc,
    "split1a1b": split1a1b,
    "evenodd": evenodd,
    "no_ext": no_ext,
    "toroidal_cone": toroidal_cone,
    "toroidal_ext": toroidal_ext,
    "bd_odometer": bd_odometer,
}


def builtin_system(name: str, *params) -> ActionSystem:
    try:
        build = BUILDERS[name]
    except KeyError:
        raise MalformedInput(f"unknown builtin {name!r}; "
                             f"choose from {sorted(BUILDERS)}") from None
    try:
        return build(*params)
    except TypeError as exc:
        raise MalformedInput(f"bad parameters for {name}: {exc}") from exc
