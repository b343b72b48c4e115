"""JSON encoding of systems, polynomials and reports.

Rationals travel as strings ("3/4"), complex coefficients as "a/b+c/di",
group elements of Z^d as integer lists.  Output is written with sorted keys
so identical inputs give identical bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .actions import (ActionSystem, Closure, COSET, EMPTY, PERIODIC,
                      TRANSLATE)
from .crossed import CrossedPoly
from .errors import MalformedInput
from .gaussian import GQ, Bounded
from .groups import GroupDescriptor, Subgroup, format_fraction, subgroup_reduce
from .spaces import FiniteSpace, space_from_description

FORMAT = "partialact-system"
VERSION = 1


def plain(obj):
    """Recursively convert values to JSON-ready ones."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, GQ):
        return str(obj)
    if isinstance(obj, Bounded):
        return obj.to_json()
    if isinstance(obj, Subgroup):
        return [plain(g) for g in obj.basis]
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(plain(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(plain(obj), sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


# systems

def _closure_to_json(sys):
    c = sys.closure
    out = {"kind": c.kind}
    if c.kind == PERIODIC:
        out["lattice"] = [sys.group.to_json(g) for g in c.param("lattice", ())]
    elif c.kind == COSET:
        comps = []
        for points, phi, H in c.param("components", ()):
            comps.append({"points": list(points),
                          "phi": {x: sys.group.to_json(phi[x])
                                  for x in points},
                          "H": [sys.group.to_json(h) for h in H.basis]})
        out["components"] = comps
    return out


def _closure_from_json(data, desc):
    if data is None:
        return Closure()
    if not isinstance(data, dict) or "kind" not in data:
        raise MalformedInput("closure needs a 'kind'")
    kind = data["kind"]
    if kind in (EMPTY, TRANSLATE):
        return Closure(kind)
    if kind == PERIODIC:
        lattice = tuple(desc.coerce(g) for g in data.get("lattice", []))
        return Closure(PERIODIC, (("lattice", lattice),))
    if kind == COSET:
        comps = []
        for comp in data.get("components", []):
            try:
                points = tuple(comp["points"])
                phi = {x: desc.coerce(comp["phi"][x]) for x in points}
                H = subgroup_reduce(desc, [desc.coerce(h)
                                           for h in comp.get("H", [])])
            except (KeyError, TypeError) as exc:
                raise MalformedInput(f"bad coset component: {exc}") from exc
            comps.append((points, phi, H))
        return Closure(COSET, (("components", tuple(comps)),))
    raise MalformedInput(f"unknown closure {kind!r}")


def system_to_json(sys: ActionSystem) -> dict:
    desc = sys.group
    return {
        "format": FORMAT,
        "version": VERSION,
        "name": sys.name,
        "group": desc.describe(),
        "space": sys.space.describe(),
        "cone_only": sys.cone_only,
        "closure": _closure_to_json(sys),
        "maps": [{"g": desc.to_json(g),
                  "map": sys.space.map_to_json(sys.map(g))}
                 for g in sys.elements()],
    }


def system_from_json(data) -> ActionSystem:
    if not isinstance(data, dict):
        raise MalformedInput("a system must be a JSON object")
    for key in ("group", "space", "maps"):
        if key not in data:
            raise MalformedInput(f"system is missing {key!r}")
    desc = GroupDescriptor.from_description(data["group"])
    space = space_from_description(data["space"])
    cone_only = data.get("cone_only", True)
    if not isinstance(cone_only, bool):
        raise MalformedInput("cone_only must be true or false")
    support = {}
    if not isinstance(data["maps"], list):
        raise MalformedInput("maps must be a list of {g, map} entries")
    for entry in data["maps"]:
        if not isinstance(entry, dict) or "g" not in entry \
                or "map" not in entry:
            raise MalformedInput("map entries need 'g' and 'map'")
        g = desc.coerce(entry["g"])
        if g in support:
            raise MalformedInput(f"group element {entry['g']} declared twice")
        support[g] = space.map_from_json(entry["map"])
    return ActionSystem(desc, space, support, cone_only,
                        _closure_from_json(data.get("closure"), desc),
                        name=data.get("name", ""))


def systems_equal(a: ActionSystem, b: ActionSystem) -> bool:
    return system_to_json(a) == system_to_json(b)


# polynomials

def poly_from_json(data, sys: ActionSystem) -> CrossedPoly:
    if not isinstance(data, list):
        raise MalformedInput("a polynomial is a list of {g, coeffs} terms")
    terms = {}
    labels = set(sys.points()) if isinstance(sys.space, FiniteSpace) else None
    for term in data:
        if not isinstance(term, dict) or "g" not in term \
                or "coeffs" not in term:
            raise MalformedInput("polynomial terms need 'g' and 'coeffs'")
        g = sys.group.coerce(term["g"])
        coeffs = term["coeffs"]
        if not isinstance(coeffs, dict):
            raise MalformedInput("coeffs must map point labels to values")
        row = terms.setdefault(g, {})
        for x, v in coeffs.items():
            if labels is not None and x not in labels:
                raise MalformedInput(f"unknown point {x!r}")
            row[x] = row.get(x, GQ()) + GQ.coerce(v)
    return CrossedPoly(terms, sys.group)


# files

def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from exc


def load_system(path) -> ActionSystem:
    return system_from_json(load(path))


def write(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
