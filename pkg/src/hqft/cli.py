"""Command line entry point.  Every command prints one JSON report.

Exit codes: 0 all checks pass, 1 input or validation error, 2 numerical
error (singular metric, oversized contraction), 3 acceptance failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import io
from .cobordlang import closed_genus_word, evaluate_word, parse, typecheck
from .errors import HQFTError, NumericalError
from .frobenius import DEFAULT_TOL, center_basis
from .group import TRIVIAL_GROUP
from .statesum import ORACLE_GUARD, evaluate, evaluate_bruteforce, plan_contraction
from .surface import (
    dual_graph,
    euler_characteristic,
    genus,
    genus_surface,
    homotopy_shift,
    pachner_13,
    pachner_22,
    pachner_31,
    total_class,
)

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL, EXIT_ACCEPTANCE = 0, 1, 2, 3
CHECK_TOL = 1e-9
ORACLE_TOL = 1e-10


class Report:
    def __init__(self, command: str, **args):
        self.data = {"command": command, "args": {k: _jsonable(v) for k, v in args.items()},
                     "inputs": {}, "outputs": {}, "checks": []}
        self.start = time.perf_counter()

    def digest(self, *paths):
        for p in paths:
            if p is not None:
                self.data["inputs"][str(p)] = io.digest(p)

    def check(self, name: str, residual: float, tolerance: float):
        residual = float(residual)
        self.data["checks"].append({"name": name, "residual": residual, "tolerance": tolerance,
                                    "passed": bool(np.isfinite(residual) and residual < tolerance)})

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.data["checks"])

    def finish(self, fail_code: int = EXIT_INPUT) -> tuple[dict, int]:
        self.data["passed"] = self.passed
        self.data["elapsed"] = time.perf_counter() - self.start
        return self.data, EXIT_OK if self.passed else fail_code

    def fail(self, exc: Exception) -> tuple[dict, int]:
        code = EXIT_NUMERICAL if isinstance(exc, NumericalError) else EXIT_INPUT
        self.data["error"] = getattr(exc, "code", type(exc).__name__)
        self.data["message"] = str(exc)
        self.data["passed"] = False
        self.data["elapsed"] = time.perf_counter() - self.start
        return self.data, code


def _jsonable(v):
    if isinstance(v, Path):
        return str(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def _pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _load_context(algebra_file, group_file=None, action_file=None, tol=None):
    alg = io.load_algebra(algebra_file, DEFAULT_TOL if tol is None else tol)
    group = io.load_group(group_file) if group_file else TRIVIAL_GROUP
    if action_file and not group_file:
        raise io.BadFile("--action needs --group")
    action = io.load_action(action_file, group, alg) if action_file else None
    return alg, group, action


def cmd_check_algebra(algebra_file, group_file=None, action_file=None, tol=None):
    rep = Report("check-algebra", algebra=algebra_file, group=group_file, action=action_file, tol=tol)
    try:
        rep.digest(algebra_file, group_file, action_file)
        alg, group, action = _load_context(algebra_file, group_file, action_file, tol)
    except (HQFTError, OSError) as exc:
        return rep.fail(exc)
    check_tol = CHECK_TOL if tol is None else tol
    for key, value in alg.residuals().items():
        rep.check(key, value, check_tol)
    if action is not None:
        for key, value in action.residuals().items():
            rep.check(key, value, check_tol)
    rep.data["outputs"] = {
        "dim": alg.dim,
        "metric": [[_pair(z) for z in row] for row in alg.metric],
        "center_dim": len(center_basis(alg)),
        "group": list(group.orders),
    }
    return rep.finish()


def _surface_outputs(surf, alg, z, plan) -> dict:
    chi = euler_characteristic(surf)
    try:
        h = genus(surf)
    except HQFTError:
        h = None
    return {
        "Z": _pair(z),
        "chi": chi,
        "genus": h,
        "total_class": [g.to_list() for g in total_class(surf)],
        "plan_cost": plan.cost(alg.dim),
    }


def cmd_statesum(surface_file, algebra_file, group_file=None, action_file=None, oracle=False,
                 tol=None, max_colorings=ORACLE_GUARD):
    rep = Report("statesum", surface=surface_file, algebra=algebra_file, group=group_file,
                 action=action_file, oracle=oracle)
    try:
        rep.digest(surface_file, algebra_file, group_file, action_file)
        alg, group, action = _load_context(algebra_file, group_file, action_file, tol)
        surf = io.load_surface(surface_file, group)
        plan = plan_contraction(dual_graph(surf))
        z = evaluate(surf, alg, action, plan=plan)
        rep.data["outputs"] = _surface_outputs(surf, alg, z, plan)
        if oracle:
            zb = evaluate_bruteforce(surf, alg, action, max_colorings=max_colorings)
            rep.data["outputs"]["Z_oracle"] = _pair(zb)
            rep.data["outputs"]["difference"] = abs(z - zb)
            rep.check("planner vs oracle", abs(z - zb) / (1 + abs(z)), ORACLE_TOL if tol is None else tol)
    except (HQFTError, OSError) as exc:
        return rep.fail(exc)
    return rep.finish(EXIT_NUMERICAL)


def cmd_oracle(surface_file, algebra_file, group_file=None, action_file=None, tol=None,
               max_colorings=ORACLE_GUARD):
    rep = Report("oracle", surface=surface_file, algebra=algebra_file, group=group_file,
                 action=action_file, max_colorings=max_colorings)
    try:
        rep.digest(surface_file, algebra_file, group_file, action_file)
        alg, group, action = _load_context(algebra_file, group_file, action_file, tol)
        surf = io.load_surface(surface_file, group)
        zb = evaluate_bruteforce(surf, alg, action, max_colorings=max_colorings)
    except (HQFTError, OSError) as exc:
        return rep.fail(exc)
    rep.data["outputs"] = {"Z": _pair(zb), "colorings": alg.dim ** (3 * surf.num_triangles)}
    return rep.finish()


def parse_move(spec: str):
    """'13:t', '31:t,c', '22:k' or 'shift:a,b'."""
    kind, _, rest = spec.partition(":")
    try:
        nums = [int(x) for x in rest.split(",")] if rest else []
    except ValueError:
        raise io.BadFile(f"move spec {spec!r}: arguments must be integers") from None
    arity = {"13": 1, "31": 2, "22": 1, "shift": 2}
    if kind not in arity or len(nums) != arity[kind]:
        raise io.BadFile(f"move spec {spec!r}: expected 13:t, 31:t,c, 22:k or shift:a,b")
    if kind == "13":
        return lambda s: pachner_13(s, nums[0])
    if kind == "31":
        return lambda s: pachner_31(s, (nums[0], nums[1]))
    if kind == "22":
        return lambda s: pachner_22(s, nums[0])
    return lambda s: homotopy_shift(s, nums[0], nums[1])


def cmd_move(surface_file, spec: str, group_file=None, out=None):
    rep = Report("move", surface=surface_file, move=spec, group=group_file, out=out)
    try:
        rep.digest(surface_file, group_file)
        group = io.load_group(group_file) if group_file else TRIVIAL_GROUP
        surf = io.load_surface(surface_file, group)
        new = parse_move(spec)(surf)
    except (HQFTError, OSError) as exc:
        return rep.fail(exc)
    before = {"triangles": surf.num_triangles, "chi": euler_characteristic(surf),
              "total_class": [g.to_list() for g in total_class(surf)]}
    after = {"triangles": new.num_triangles, "chi": euler_characteristic(new),
             "total_class": [g.to_list() for g in total_class(new)]}
    rep.data["outputs"] = {"before": before, "after": after}
    rep.check("chi preserved", abs(before["chi"] - after["chi"]), 0.5)
    rep.check("total class preserved", 0.0 if before["total_class"] == after["total_class"] else 1.0, 0.5)
    if out is not None:
        io.save(out, io.surface_to_json(new))
        rep.data["outputs"]["written"] = str(out)
    else:
        rep.data["outputs"]["surface"] = io.surface_to_json(new)
    return rep.finish()


def cmd_cobord(expr: str, algebra_file, group_file=None, action_file=None, tol=None):
    rep = Report("cobord", expr=expr, algebra=algebra_file, group=group_file, action=action_file)
    try:
        rep.digest(algebra_file, group_file, action_file)
        alg, group, action = _load_context(algebra_file, group_file, action_file, tol)
        word = parse(expr)
        dom, cod = typecheck(word)
        m = evaluate_word(word, alg, action)
    except (HQFTError, OSError) as exc:
        if hasattr(exc, "position"):
            rep.data["position"] = exc.position
        return rep.fail(exc)
    rep.data["outputs"] = {"domain": dom, "codomain": cod,
                           "matrix": [[_pair(z) for z in row] for row in m]}
    return rep.finish()


def cmd_genus(h: int, algebra_file, group_file=None, action_file=None, residues=None, tol=None):
    """Build a genus-h surface and the closed word of the same class; compare."""
    rep = Report("genus", genus=h, algebra=algebra_file, group=group_file, action=action_file,
                 total_class=residues)
    try:
        rep.digest(algebra_file, group_file, action_file)
        alg, group, action = _load_context(algebra_file, group_file, action_file, tol)
        g = group.element(residues) if residues is not None else group.identity()
        surf = genus_surface(h, group, g)
        plan = plan_contraction(dual_graph(surf))
        z = evaluate(surf, alg, action, plan=plan)
        w = complex(evaluate_word(closed_genus_word(h, g), alg, action)[0, 0])
    except (HQFTError, OSError) as exc:
        return rep.fail(exc)
    rep.data["outputs"] = {**_surface_outputs(surf, alg, z, plan), "Z_word": _pair(w)}
    scale = max(abs(z), abs(w))
    rep.check("state sum vs closed word", abs(z - w) / scale if scale else 0.0,
              1e-8 if tol is None else tol)
    return rep.finish()


def cmd_acceptance(seed: int = 0, parallel: bool = False, tol=None, criteria=None):
    from .acceptance import run_acceptance

    rep = Report("acceptance", seed=seed, parallel=parallel, tol=tol, criteria=criteria)
    result = run_acceptance(seed=seed, parallel=parallel, tol=tol, criteria=criteria)
    rep.data["outputs"] = {"criteria": result["criteria"]}
    rep.data["checks"] = result["checks"]
    return rep.finish(EXIT_ACCEPTANCE)


def _residues(text: str | None):
    if text is None:
        return None
    return [int(x) for x in text.split(",")] if text.strip() else []


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="override the tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--parallel", action="store_true")
    ctx = argparse.ArgumentParser(add_help=False)
    ctx.add_argument("--group", type=Path, default=None, help="group JSON file")
    ctx.add_argument("--action", type=Path, default=None, help="action JSON file (needs --group)")

    p = argparse.ArgumentParser(prog="hqft", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-algebra", parents=[common, ctx], help="validate an algebra and action")
    s.add_argument("algebra", type=Path)

    s = sub.add_parser("statesum", parents=[common, ctx], help="evaluate Z of a labeled surface")
    s.add_argument("surface", type=Path)
    s.add_argument("algebra", type=Path)
    s.add_argument("--oracle", action="store_true", help="also run the brute-force sum")
    s.add_argument("--max-colorings", type=int, default=ORACLE_GUARD)

    s = sub.add_parser("oracle", parents=[common, ctx], help="brute-force coloring sum only")
    s.add_argument("surface", type=Path)
    s.add_argument("algebra", type=Path)
    s.add_argument("--max-colorings", type=int, default=ORACLE_GUARD)

    s = sub.add_parser("move", parents=[common], help="apply 13:t, 31:t,c, 22:k or shift:a,b")
    s.add_argument("surface", type=Path)
    s.add_argument("spec")
    s.add_argument("--group", type=Path, default=None)
    s.add_argument("--out", type=Path, default=None)

    s = sub.add_parser("cobord", parents=[common, ctx], help="evaluate a cobordism word")
    s.add_argument("expr")
    s.add_argument("algebra", type=Path)

    s = sub.add_parser("genus", parents=[common, ctx], help="compare state sum and closed word")
    s.add_argument("h", type=int)
    s.add_argument("algebra", type=Path)
    s.add_argument("--class", dest="total", default=None, help="total class residues, e.g. 3 or 1,2")

    s = sub.add_parser("acceptance", parents=[common], help="run the acceptance suite")
    s.add_argument("--criteria", default=None, help="comma-separated criterion numbers")
    return p


def run(argv=None) -> tuple[dict, int]:
    args = build_parser().parse_args(argv)
    c = args.command
    if c == "check-algebra":
        return cmd_check_algebra(args.algebra, args.group, args.action, args.tol)
    if c == "statesum":
        return cmd_statesum(args.surface, args.algebra, args.group, args.action, args.oracle,
                            args.tol, args.max_colorings)
    if c == "oracle":
        return cmd_oracle(args.surface, args.algebra, args.group, args.action, args.tol,
                          args.max_colorings)
    if c == "move":
        return cmd_move(args.surface, args.spec, args.group, args.out)
    if c == "cobord":
        return cmd_cobord(args.expr, args.algebra, args.group, args.action, args.tol)
    if c == "genus":
        return cmd_genus(args.h, args.algebra, args.group, args.action, _residues(args.total), args.tol)
    criteria = [int(x) for x in args.criteria.split(",")] if args.criteria else None
    return cmd_acceptance(args.seed, args.parallel, args.tol, criteria)


def main(argv=None) -> int:
    report, code = run(argv)
    json.dump(report, sys.stdout, indent=1)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
