"""Command line front end.

Exit codes: 0 success, 1 malformed input, 2 a checked criterion failed (the
report carries a witness), 3 a negative decision, 4 the input is outside an
operation's preconditions.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .actions import check_axioms, check_properties
from .catalog import BUILDERS, builtin_system
from .conjugacy import (chain_profile, decide_conjugacy, ideal_invariants,
                        integer_rescale)
from .crossed import (analytic_matrix_realize, is_analytic, l_norm, phi,
                      phi_inv)
from .errors import PartialActError, RequiresExtension
from .extension import ExtensionWitness, extend_group, extend_total_order
from .groupoid import build_groupoid, cstar_norm, i_norm
from .groups import is_totally_ordering
from .jsonio import (dumps, load, plain, poly_from_json, system_from_json,
                     system_to_json, write)
from .spaces import FiniteSpace
from .towers import KINDS, build_tower, verify_tower

OK, MALFORMED, CRITERION, NEGATIVE, PRECONDITION = 0, 1, 2, 3, 4


class Context:
    def __init__(self, args):
        self.args = args
        self.inputs = {}

    def system(self, path):
        data = load(path)
        with open(path, "rb") as fh:
            self.inputs[path] = hashlib.sha256(fh.read()).hexdigest()
        return system_from_json(data)

    def poly(self, path, sys):
        data = load(path)
        with open(path, "rb") as fh:
            self.inputs[path] = hashlib.sha256(fh.read()).hexdigest()
        return poly_from_json(data, sys)


def _group_mode(sys, widen=0):
    """Return a group-mode version of sys, extending it when needed."""
    if not sys.cone_only:
        return sys, None
    if isinstance(sys.space, FiniteSpace):
        res = extend_group(sys, widen)
        if isinstance(res, ExtensionWitness):
            return None, res
        return res.system, None
    if is_totally_ordering(sys.group):
        return extend_total_order(sys), None
    raise RequiresExtension("cannot extend a cone-only interval system "
                            "over this group")


def _walk_json(w: ExtensionWitness, desc):
    return {"x": w.x, "y": w.y,
            "walk": [{"g": desc.to_json(s.g), "inverse": s.inverse,
                      "from": s.source, "to": s.target} for s in w.walk],
            "label_sum": desc.to_json(w.label_sum(desc))}


def _fmt(desc):
    def fmt(w):
        out = {}
        for k, v in w.items():
            out[k] = desc.to_json(v) if k in ("s", "t", "g") else plain(v)
        return out
    return fmt


# subcommands

def cmd_validate(ctx):
    sys_ = ctx.system(ctx.args.system)
    rep = check_axioms(sys_)
    body = {"axioms": rep.to_json(_fmt(sys_.group)),
            "definition_holds": rep.definition_holds,
            "third_arrow_holds": rep.third_arrow_holds}
    return (OK if rep.ok else CRITERION), body


def cmd_properties(ctx):
    sys_ = ctx.system(ctx.args.system)
    rep = check_properties(sys_)
    return OK, {"properties": rep.to_json(_fmt(sys_.group))}


def cmd_extend(ctx):
    sys_ = ctx.system(ctx.args.system)
    desc = sys_.group
    if not isinstance(sys_.space, FiniteSpace):
        ext = extend_total_order(sys_)
        return OK, {"system": system_to_json(ext)}
    res = extend_group(sys_, ctx.args.widen)
    if isinstance(res, ExtensionWitness):
        return CRITERION, {"extendable": False,
                           "witness": _walk_json(res, desc)}
    if ctx.args.out:
        write(ctx.args.out, system_to_json(res.system))
    return OK, {"extendable": True,
                "system": system_to_json(res.system),
                "H": [desc.to_json(h) for h in res.H.basis],
                "phi": {x: desc.to_json(v) for x, v in res.phi.items()}}


def _extended(ctx, sys_):
    ext, w = _group_mode(sys_, ctx.args.widen)
    if w is not None:
        return None, (CRITERION, {"extendable": False,
                                  "witness": _walk_json(w, sys_.group)})
    return ext, None


def cmd_groupoid(ctx):
    sys_ = ctx.system(ctx.args.system)
    ext, fail = _extended(ctx, sys_)
    if fail:
        return fail
    gpd = build_groupoid(ext)
    desc = ext.group
    order = ext.order
    arrows = sorted(gpd.cocycle.items(),
                    key=lambda kv: (order(kv[0][0]), order(kv[0][1])))
    return OK, {"arrows": [{"x": x, "y": y, "c": desc.to_json(t)}
                           for (x, y), t in arrows],
                "orbits": gpd.orbits, "arrow_count": len(arrows)}


def _poly_setup(ctx):
    sys_ = ctx.system(ctx.args.system)
    ext, fail = _extended(ctx, sys_)
    if fail:
        return None, None, None, fail
    p = ctx.poly(ctx.args.poly, ext)
    return sys_, ext, p, None


def cmd_norms(ctx):
    _, ext, p, fail = _poly_setup(ctx)
    if fail:
        return fail
    f = phi(p, build_groupoid(ext))
    return OK, {"L": plain(l_norm(p)), "I": plain(i_norm(f)),
                "Cstar": round(cstar_norm(f), 12)}


def cmd_phi(ctx):
    _, ext, p, fail = _poly_setup(ctx)
    if fail:
        return fail
    f = phi(p, build_groupoid(ext))
    return OK, {"function": f.to_json(), "round_trip": phi_inv(f) == p}


def cmd_analytic(ctx):
    sys_ = ctx.system(ctx.args.system)
    p = ctx.poly(ctx.args.poly, sys_)
    if not is_analytic(p, sys_.group):
        return OK, {"analytic": False, "matrix": None}
    M = analytic_matrix_realize(sys_, p)
    return OK, {"analytic": True, "labels": sys_.points(),
                "matrix": [[str(v) for v in row] for row in M]}


def cmd_tower(ctx):
    t = build_tower(ctx.args.kind, ctx.args.levels)
    if not ctx.args.verify:
        return OK, {"kind": t.kind, "levels": t.indices,
                    "points": [len(s.points()) for s in t.levels]}
    rep = verify_tower(t, samples=ctx.args.samples, seed=ctx.args.seed)
    return (OK if rep["ok"] else CRITERION), rep


def _z_system(sys_):
    return integer_rescale(sys_)


def cmd_conjugacy(ctx):
    A = _z_system(ctx.system(ctx.args.a))
    B = _z_system(ctx.system(ctx.args.b))
    tau = decide_conjugacy(A, B)
    body = {"profiles": [list(chain_profile(A, False).lengths),
                         list(chain_profile(B, False).lengths)],
            "conjugate": tau is not None}
    if tau is None:
        return NEGATIVE, body
    body["tau"] = {x: tau[x] for x in A.points()}
    if ctx.args.tau_out:
        write(ctx.args.tau_out, body["tau"])
    return OK, body


def cmd_invariants(ctx):
    sys_ = _z_system(ctx.system(ctx.args.system))
    inv = ideal_invariants(sys_, ctx.args.kmax)
    return OK, {"kmax": ctx.args.kmax, **inv.to_json(),
                "profile": list(chain_profile(sys_, False).lengths)}


def _param(text):
    try:
        return int(text)
    except ValueError:
        return text


def cmd_builtin(ctx):
    sys_ = builtin_system(ctx.args.name, *[_param(p) for p in ctx.args.params])
    data = system_to_json(sys_)
    if ctx.args.out:
        write(ctx.args.out, data)
        return OK, {"written": ctx.args.out, "name": sys_.name}
    return OK, data


COMMANDS = {
    "validate": cmd_validate, "properties": cmd_properties,
    "extend": cmd_extend, "groupoid": cmd_groupoid, "norms": cmd_norms,
    "phi": cmd_phi, "analytic": cmd_analytic, "tower": cmd_tower,
    "conjugacy": cmd_conjugacy, "invariants": cmd_invariants,
    "builtin": cmd_builtin,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="machine-readable output (byte-stable)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--widen", type=int, default=0,
                        help="extra multiples of each cycle generator in "
                             "the extended support window")

    p = argparse.ArgumentParser(prog="partialact",
                                description="Partial actions toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    for name in ("validate", "properties", "groupoid"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("system")
    s = sub.add_parser("extend", parents=[common])
    s.add_argument("system")
    s.add_argument("--out")
    for name in ("norms", "phi", "analytic"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--system", required=True)
        s.add_argument("--poly", required=True)
    s = sub.add_parser("tower", parents=[common])
    s.add_argument("kind", choices=KINDS)
    s.add_argument("--levels", type=int, required=True)
    s.add_argument("--verify", action="store_true")
    s.add_argument("--samples", type=int, default=500)
    s = sub.add_parser("conjugacy", parents=[common])
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--tau-out")
    s = sub.add_parser("invariants", parents=[common])
    s.add_argument("system")
    s.add_argument("--kmax", type=int, default=3)
    s = sub.add_parser("builtin", parents=[common])
    s.add_argument("name", choices=sorted(BUILDERS))
    s.add_argument("params", nargs="*")
    s.add_argument("--out")
    return p


def _text(command, code, body, elapsed):
    lines = [f"{command}: exit {code}"]
    for key, value in body.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(plain(value), sort_keys=True)
        lines.append(f"  {key}: {value}")
    lines.append(f"  time: {elapsed:.3f}s")
    return "\n".join(lines) + "\n"


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return MALFORMED if exc.code else OK
    ctx = Context(args)
    start = time.perf_counter()
    try:
        code, body = COMMANDS[args.command](ctx)
    except PartialActError as exc:
        code = exc.exit_code
        body = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        witness = getattr(exc, "offenders", None) or exc.witness
        if witness:
            body["error"]["witness"] = plain(witness)
    elapsed = time.perf_counter() - start
    if args.json:
        report = {"command": args.command, "exit_code": code,
                  "inputs": ctx.inputs,
                  "tool": {"name": "partialact", "version": __version__},
                  "result": body}
        out.write(dumps(report))
    else:
        out.write(_text(args.command, code, body, elapsed))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
