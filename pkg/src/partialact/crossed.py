"""Polynomials sum f_n U^n in the partial crossed product.

The coefficient f_n lives on the range X_n of the map for n.  Products use
the abelian monomial rule

    (f U^n)(g U^m) = h U^(n+m),  h(x) = f(x) g(a_n^{-1}(x)) on X_n n X_(n+m),

and the involution (f U^n)* = (conj f o a_n) U^(-n), supported on X_(-n).
Under the map to groupoid functions, f U^n becomes the function with value
f(x) on the arrow (x, a_(-n)(x)); its cocycle value is -n.
"""
from __future__ import annotations

from .actions import ActionSystem
from .errors import RequiresExtension, SigmaFreenessError, ValidationError
from .gaussian import GQ, ZERO, bmax, bsum, modulus
from .groupoid import FiniteGroupoid, GroupoidFunction
from .groups import cone_contains


class CrossedPoly:
    """Finitely supported g -> {point: coefficient}; zeros are dropped."""

    def __init__(self, terms=None, desc=None):
        self.desc = desc
        out = {}
        for g, coeffs in dict(terms or {}).items():
            if desc is not None:
                g = desc.coerce(g)
            row = {}
            for x, v in dict(coeffs).items():
                v = GQ.coerce(v)
                if v:
                    row[x] = v
            if row:
                acc = out.setdefault(g, {})
                for x, v in row.items():
                    acc[x] = acc.get(x, ZERO) + v
                out[g] = {x: v for x, v in acc.items() if v}
                if not out[g]:
                    del out[g]
        self.terms = out

    @classmethod
    def monomial(cls, g, coeffs, desc=None):
        return cls({g: coeffs}, desc)

    @classmethod
    def indicator(cls, g, points, desc=None, value=1):
        return cls({g: {x: value for x in points}}, desc)

    def support(self):
        return list(self.terms)

    def coefficient(self, g, x):
        return self.terms.get(g, {}).get(x, ZERO)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, CrossedPoly) and self.terms == other.terms

    def __add__(self, other):
        terms = {g: dict(c) for g, c in self.terms.items()}
        for g, c in other.terms.items():
            row = terms.setdefault(g, {})
            for x, v in c.items():
                row[x] = row.get(x, ZERO) + v
        return CrossedPoly(terms, self.desc or other.desc)

    def scale(self, c):
        c = GQ.coerce(c)
        return CrossedPoly({g: {x: c * v for x, v in row.items()}
                            for g, row in self.terms.items()}, self.desc)

    def __repr__(self):
        parts = []
        for g, row in self.terms.items():
            body = ", ".join(f"{x}: {v}" for x, v in sorted(row.items()))
            parts.append(f"{g}: {{{body}}}")
        return "CrossedPoly({" + "; ".join(parts) + "})"

    def to_json(self, sys: ActionSystem):
        desc, order = sys.group, sys.order
        out = []
        for g in sorted(self.terms, key=desc.key):
            row = self.terms[g]
            out.append({"g": desc.to_json(g),
                        "coeffs": {x: str(row[x])
                                   for x in sorted(row, key=order)}})
        return out


def check_support(p: CrossedPoly, sys: ActionSystem):
    """Every coefficient f_n must vanish off X_n."""
    for g, row in p.terms.items():
        g = sys.group.coerce(g)
        ran = sys.range(g)
        for x in row:
            if not ran.contains(x):
                raise ValidationError(
                    f"coefficient of U^{g} is nonzero at {x}, outside X_{g}",
                    [(g, x)])


def _require_maps(sys, elems):
    if not sys.cone_only:
        return
    for g in elems:
        if not cone_contains(sys.group, g):
            raise RequiresExtension(
                f"U^{g} is outside the cone of a cone-only system")


def poly_mul(p: CrossedPoly, q: CrossedPoly, sys: ActionSystem) -> CrossedPoly:
    check_support(p, sys)
    check_support(q, sys)
    _require_maps(sys, list(p.terms) + list(q.terms))
    desc = sys.group
    out = {}
    for n, f in p.terms.items():
        a_n = sys.map(n)
        for m, g in q.terms.items():
            nm = desc.add(n, m)
            _require_maps(sys, [nm])
            target = sys.range(nm)
            row = out.setdefault(nm, {})
            for x, fx in f.items():
                if not target.contains(x):
                    continue
                gx = g.get(a_n.apply_inverse(x))
                if gx is not None:
                    row[x] = row.get(x, ZERO) + fx * gx
    return CrossedPoly(out, desc)


def poly_adjoint(p: CrossedPoly, sys: ActionSystem) -> CrossedPoly:
    check_support(p, sys)
    desc = sys.group
    out = {}
    for n, f in p.terms.items():
        if sys.cone_only and not desc.is_zero(n):
            raise RequiresExtension(
                f"the adjoint of U^{n} needs the map for {desc.neg(n)}")
        a_n = sys.map(n)
        row = out.setdefault(desc.neg(n), {})
        for y, v in f.items():
            row[a_n.apply_inverse(y)] = v.conj()
    return CrossedPoly(out, desc)


def l_norm(p: CrossedPoly, bits: int = 64):
    """Sum over n of the largest |f_n(x)|; Fraction when exact."""
    return bsum([bmax([modulus(v, bits) for v in row.values()], bits)
                 for row in p.terms.values()], bits).settle()


def phi(p: CrossedPoly, gpd: FiniteGroupoid) -> GroupoidFunction:
    sys = gpd.system
    check_support(p, sys)
    desc = sys.group
    vals = {}
    for n, f in p.terms.items():
        a_n = sys.map(n)
        t = desc.neg(n)
        for x, v in f.items():
            arrow = (x, a_n.apply_inverse(x))
            if gpd.cocycle.get(arrow) != t:
                raise ValidationError(
                    f"arrow {arrow} with cocycle {t} is not in the groupoid",
                    [arrow])
            vals[arrow] = v
    return GroupoidFunction(gpd, vals)


def phi_inv(f: GroupoidFunction) -> CrossedPoly:
    desc = f.gpd.system.group
    terms = {}
    for (x, y), v in f.values.items():
        n = desc.neg(f.gpd.cocycle[(x, y)])
        terms.setdefault(n, {})[x] = v
    return CrossedPoly(terms, desc)


def is_analytic(p: CrossedPoly, desc) -> bool:
    return all(cone_contains(desc, g) for g in p.terms)


def sigma_freeness_witness(sys: ActionSystem):
    """(s, t, x) with distinct declared cone elements agreeing at x, or None."""
    cone = sys.cone_elements()
    for x in sys.points():
        seen = {}
        for s in cone:
            y = sys.map(s).apply(x)
            if y is None:
                continue
            if y in seen:
                return (seen[y], s, x)
            seen[y] = s
    return None


def analytic_matrix_realize(sys: ActionSystem, p: CrossedPoly):
    """Matrix over the label order with f_s(a_s(x)) at cell (a_s(x), x)."""
    if not is_analytic(p, sys.group):
        raise ValidationError("polynomial has terms outside the cone",
                              [g for g in p.terms
                               if not cone_contains(sys.group, g)])
    w = sigma_freeness_witness(sys)
    if w is not None:
        raise SigmaFreenessError(
            f"a_{w[0]} and a_{w[1]} agree at {w[2]}", w)
    check_support(p, sys)
    pts = sys.points()
    index = {x: i for i, x in enumerate(pts)}
    M = [[ZERO] * len(pts) for _ in pts]
    for s, f in p.terms.items():
        a_s = sys.map(s)
        for y, v in f.items():
            x = a_s.apply_inverse(y)
            M[index[y]][index[x]] = M[index[y]][index[x]] + v
    return M


def matmul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum((A[i][j] * B[j][c] for j in range(k) if A[i][j] and B[j][c]),
                 ZERO) for c in range(m)] for i in range(n)]


def support_cells(M):
    return {(i, j) for i, row in enumerate(M) for j, v in enumerate(row) if v}
