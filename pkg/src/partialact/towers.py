"""Finite stages of towers of partial actions and their induced embeddings.

A level map phi sends the points of level i+1 onto those of level i.  It
intertwines the two actions when, for every group element g and upper point
x, phi(x) lies in the lower domain of g exactly when x lies in the upper
domain, and then a_g(phi(x)) = phi(a^_g(x)).  The induced embedding sends
f U^m to (f o phi) V^m.

Levels of the binary towers use the integer labels of :mod:`catalog`, so
deleting the last (high) bit is ``x mod 2**i``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .actions import ActionSystem
from .catalog import (bd_odometer, refine, standard, toroidal_cone,
                      toroidal_ext)
from .crossed import (CrossedPoly, analytic_matrix_realize, is_analytic,
                      poly_adjoint, poly_mul, support_cells)
from .errors import (FreenessError, IntertwiningError, MalformedInput,
                     ValidationError)
from .extension import extend_total_order
from .groupoid import build_groupoid
from .generators import random_poly
from .groups import format_fraction


@dataclass
class IntertwineReport:
    passed: bool
    witness: tuple = None      # (g, x)
    reason: str = ""

    def __bool__(self):
        return self.passed

    def to_json(self, desc):
        if self.passed:
            return {"passed": True}
        g, x = self.witness
        return {"passed": False, "reason": self.reason,
                "witness": {"g": desc.to_json(g), "x": x}}


def _elements(upper, lower):
    desc = upper.group
    gs = set(upper.elements()) | set(lower.elements())
    gs |= {desc.neg(g) for g in gs}
    return sorted(gs, key=desc.key)


def check_intertwine(phi: dict, upper: ActionSystem,
                     lower: ActionSystem) -> IntertwineReport:
    if upper.group != lower.group:
        raise ValidationError("levels use different groups")
    lower_pts = set(lower.points())
    missing = lower_pts - set(phi[x] for x in upper.points())
    if missing:
        raise ValidationError("level map is not surjective", sorted(missing))
    if any(phi[x] not in lower_pts for x in upper.points()):
        raise ValidationError("level map leaves the lower space")
    for g in _elements(upper, lower):
        up, low = upper.map(g), lower.map(g)
        for x in upper.points():
            in_up = up.domain.contains(x)
            if in_up != low.domain.contains(phi[x]):
                return IntertwineReport(False, (g, x), "domain")
            if in_up and low.apply(phi[x]) != phi[up.apply(x)]:
                return IntertwineReport(False, (g, x), "equivariance")
    return IntertwineReport(True)


def induced_embedding(phi: dict, p: CrossedPoly, upper: ActionSystem,
                      lower: ActionSystem = None) -> CrossedPoly:
    """Coefficientwise f -> f o phi.

    When ``lower`` is given the level map is checked first and an
    :class:`IntertwiningError` is raised if it does not intertwine.
    """
    if lower is not None:
        report = check_intertwine(phi, upper, lower)
        if not report:
            raise IntertwiningError(
                f"level map fails the {report.reason} condition",
                report.witness)
    pts = upper.points()
    terms = {}
    for g, row in p.terms.items():
        terms[g] = {x: row[phi[x]] for x in pts if phi[x] in row}
    return CrossedPoly(terms, upper.group)


def poly_cells(sys: ActionSystem, p: CrossedPoly):
    """Matrix entries of a polynomial: f_n(x) sits at (x, a_(-n)(x))."""
    idx = {x: i for i, x in enumerate(sys.points())}
    out = {}
    for n, row in p.terms.items():
        a_n = sys.map(n)
        for x, v in row.items():
            out[(idx[x], idx[a_n.apply_inverse(x)])] = v
    return out


@dataclass
class Tower:
    kind: str
    indices: list               # level numbers
    levels: list                # group-mode systems
    maps: list                  # maps[j]: points of levels[j+1] -> levels[j]
    cones: list = field(default_factory=list)   # cone systems, if any


def _mod_map(i):
    return {str(x): str(x % 2 ** i) for x in range(2 ** (i + 1))}


def _floor_map(i):
    n = 2 ** (i + 1)
    return {format_fraction(Fraction(x, n)): format_fraction(Fraction(x // 2, n // 2))
            for x in range(n)}


KINDS = ("standard", "refinement", "bd_odometer", "toroidal")


def build_tower(kind: str, levels: int) -> Tower:
    if kind not in KINDS:
        raise MalformedInput(f"unknown tower kind {kind!r}; choose from {KINDS}")
    first = 2 if kind == "toroidal" else 1
    if isinstance(levels, bool) or not isinstance(levels, int) or \
            levels < first:
        raise MalformedInput(f"{kind} towers need levels >= {first}")
    idx = list(range(first, levels + 1))
    if kind == "standard":
        cones = [standard(i) for i in idx]
        systems = [extend_total_order(c) for c in cones]
        maps = [_mod_map(i) for i in idx[:-1]]
    elif kind == "refinement":
        cones = [refine(i) for i in idx]
        systems = [extend_total_order(c) for c in cones]
        maps = [_floor_map(i) for i in idx[:-1]]
    elif kind == "bd_odometer":
        cones = []
        systems = [bd_odometer(i) for i in idx]
        maps = [_mod_map(i) for i in idx[:-1]]
    else:
        cones = [toroidal_cone(i) for i in idx]
        systems = [toroidal_ext(i) for i in idx]
        maps = [_mod_map(i) for i in idx[:-1]]
    return Tower(kind, idx, systems, maps, cones)


def _arrow_labels(sys):
    labels = {}
    for g in sys.elements():
        for x, y in sys.map(g).pairs():
            labels[(x, y)] = g
    return labels


def _pattern(kind, lower, upper, phi):
    """Compare the image of every matrix unit with the expected pattern.

    The unit e_jk is the monomial chi_j U^(-t) where a_t sends j to k.
    """
    n = len(lower.points())
    lpts, upts = lower.points(), upper.points()
    labels = _arrow_labels(lower)
    for j in range(n):
        for k in range(n):
            t = labels[(lpts[j], lpts[k])]
            unit = CrossedPoly({lower.group.neg(t): {lpts[j]: 1}}, lower.group)
            got = set(poly_cells(upper, induced_embedding(phi, unit, upper)))
            if kind == "standard":
                want = {(j, k), (j + n, k + n)}
            else:
                want = {(2 * j, 2 * k), (2 * j + 1, 2 * k + 1)}
            if got != want:
                return {"passed": False,
                        "witness": {"unit": [lpts[j], lpts[k]],
                                    "image": sorted(
                                        [upts[a], upts[b]] for a, b in got)}}
    return {"passed": True, "units": n * n}


def verify_pair(tower: Tower, j: int, samples: int = 500, seed: int = 0):
    """Checks for the level pair (indices[j], indices[j+1])."""
    lower, upper, phi = tower.levels[j], tower.levels[j + 1], tower.maps[j]
    desc = lower.group
    rng = random.Random(seed * 1000003 + j)
    out = {"lower": tower.indices[j], "upper": tower.indices[j + 1]}
    out["intertwine"] = check_intertwine(phi, upper, lower).to_json(desc)

    def emb(p):
        return induced_embedding(phi, p, upper)

    mult = {"passed": True, "samples": samples}
    analytic = {"passed": True, "samples": samples}
    for _ in range(samples):
        p, q = random_poly(lower, rng), random_poly(lower, rng)
        if emb(poly_mul(p, q, lower)) != poly_mul(emb(p), emb(q), upper):
            mult = {"passed": False, "witness": [p.to_json(lower),
                                                 q.to_json(lower)]}
            break
        if emb(p).is_zero() or emb(poly_adjoint(p, lower)) != \
                poly_adjoint(emb(p), upper):
            mult = {"passed": False, "witness": [p.to_json(lower)]}
            break
        a = random_poly(lower, rng, analytic=True)
        if not is_analytic(emb(a), desc):
            analytic = {"passed": False, "witness": a.to_json(lower)}
            break
    out["multiplicative"] = mult
    out["analytic"] = analytic
    if tower.kind in ("standard", "refinement"):
        out["pattern"] = _pattern(tower.kind, lower, upper, phi)
    return out


def verify_level(tower: Tower, j: int):
    sys = tower.levels[j]
    out = {"level": tower.indices[j], "points": len(sys.points())}
    if tower.kind == "bd_odometer":
        try:
            build_groupoid(sys, validate=False)
            out["realization"] = {"refused": False}
        except FreenessError as exc:
            g, x = exc.witness
            out["realization"] = {"refused": True, "reason": "not free",
                                  "witness": {"g": sys.group.to_json(g),
                                              "x": x}}
    if tower.kind == "standard":
        cone = tower.cones[j]
        # all analytic monomials at once; positive entries cannot cancel
        p = CrossedPoly({s: {x: 1 for x in cone.range(s)}
                         for s in cone.cone_elements()}, cone.group)
        cells = support_cells(analytic_matrix_realize(cone, p))
        out["triangular"] = {"passed": all(r >= c for r, c in cells),
                             "orientation": "row >= column",
                             "cells": len(cells)}
    if tower.kind == "toroidal":
        out.update(toroidal_verify(tower.indices[j]))
    return out


def verify_tower(tower: Tower, samples: int = 500, seed: int = 0):
    levels = [verify_level(tower, j) for j in range(len(tower.levels))]
    pairs = [verify_pair(tower, j, samples, seed)
             for j in range(len(tower.maps))]
    return {"kind": tower.kind, "levels": levels, "pairs": pairs,
            "ok": all(_green(v) for v in levels + pairs)}


def _green(report):
    for key, v in report.items():
        if isinstance(v, dict) and "passed" in v and not v["passed"]:
            return False
    return True


# toroidal checks

def _indicator(g, pts, desc):
    return CrossedPoly({g: {x: 1 for x in pts}}, desc)


def toroidal_y(sys: ActionSystem):
    """y = chi_(D1) U^(e1) + chi_(D0) U^(-e2), with D0 even and D1 odd."""
    pts = sys.points()
    even, odd = pts[0::2], pts[1::2]
    return CrossedPoly({(1, 0): {x: 1 for x in odd},
                        (0, -1): {x: 1 for x in even}}, sys.group)


def toroidal_verify(i: int):
    sys = toroidal_ext(i)
    desc = sys.group
    pts = sys.points()
    n = len(pts)
    one = _indicator((0, 0), pts, desc)
    y = toroidal_y(sys)
    ys = poly_adjoint(y, sys)

    def mul(*ps):
        acc = ps[0]
        for p in ps[1:]:
            acc = poly_mul(acc, p, sys)
        return acc

    report = {}
    report["unitary"] = {"passed": mul(y, ys) == one and mul(ys, y) == one}

    bad = None
    for z in range(n):
        f = _indicator((0, 0), [str(z)], desc)
        want = _indicator((0, 0), [str((z - 1) % n)], desc)
        if mul(ys, f, y) != want:
            bad = str(z)
            break
    report["odometer_conjugation"] = {"passed": bad is None, "checked": n}
    if bad is not None:
        report["odometer_conjugation"]["witness"] = bad

    report["word_ladder"] = _word_ladder(sys, y, ys, mul)
    report["cycle_pattern"] = cycle_pattern(i)
    return report


def _word_ladder(sys, y, ys, mul):
    desc = sys.group
    pts = sys.points()
    even, odd = pts[0::2], pts[1::2]
    failures = []

    def claim(name, got, want):
        if got != want:
            failures.append(name)
        return want

    m1 = claim("chi_D1 y", mul(_indicator((0, 0), odd, desc), y),
               _indicator((1, 0), odd, desc))
    m2 = claim("chi_D0 y", mul(_indicator((0, 0), even, desc), y),
               _indicator((0, -1), even, desc))
    claim("adjoint", poly_adjoint(m2, sys), _indicator((0, 1), odd, desc))
    w1 = claim("y^2", mul(y, y), _indicator((1, -1), pts, desc))
    w1s = poly_adjoint(w1, sys)

    words = {}
    window = sorted({g[0] for g in sys.elements()} |
                    {-g[1] for g in sys.elements()})
    lo, hi = window[0] - 1, window[-1] + 1
    powers = {0: _indicator((0, 0), pts, desc)}
    for a in range(1, hi + 1):
        powers[a] = mul(powers[a - 1], w1)
    for a in range(-1, lo - 1, -1):
        powers[a] = mul(powers[a + 1], w1s)
    for a, w in powers.items():
        words[(a, -a)] = claim(f"power {a}", w,
                               _indicator((a, -a), pts, desc))
        words[(a + 1, -a)] = claim(f"left e1 {a}", mul(m1, w),
                                   _indicator((a + 1, -a), odd, desc))
        words[(a, -a - 1)] = claim(f"left -e2 {a}", mul(m2, w),
                                   _indicator((a, -a - 1), even, desc))
    missing = []
    for s in sys.elements():
        ran = sys.range(s)
        if ran.is_empty():
            continue
        want = _indicator(s, list(ran), desc)
        if words.get(s) != want:
            missing.append(desc.to_json(s))
    stray = [desc.to_json(s) for s in sys.elements()
             if s not in words and not sys.map(s).is_empty()]
    out = {"passed": not failures and not missing and not stray,
           "monomials": len([s for s in sys.elements()
                             if not sys.map(s).is_empty()])}
    if failures:
        out["failed_identities"] = failures
    if missing or stray:
        out["unreproduced"] = missing + stray
    return out


def cycle_pattern(i: int):
    """Cells realized by the analytic monomials of the toroidal cone system."""
    cone = toroidal_cone(i)
    n = 2 ** i
    cells = set()
    for s in cone.cone_elements():
        for z in cone.range(s):
            p = CrossedPoly({s: {z: 1}}, cone.group)
            cells |= support_cells(analytic_matrix_realize(cone, p))
    expected = {(x, x) for x in range(n)} | \
        {((x + 1) % n, x) for x in range(0, n, 2)} | \
        {((x - 1) % n, x) for x in range(0, n, 2)}
    return {"passed": cells == expected and len(cells) == 2 * n,
            "dimension": len(cells),
            "off_diagonal": sorted([r, c] for r, c in cells if r != c)}
