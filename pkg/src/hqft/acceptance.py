"""Acceptance suite: eight criteria, each a function returning a list of
:class:`Check` records.  Every check carries its residual and tolerance."""

from __future__ import annotations

import itertools
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np

from . import catalog, io
from .cobordlang import closed_genus_word, evaluate_word, parse
from .frobenius import Algebra, GAction, make_action, trivial_action, twisted_constants
from .group import FiniteAbelianGroup, make_group
from .statesum import evaluate, evaluate_bruteforce
from .surface import (
    LabeledSurface,
    degree3_corners,
    disjoint_union,
    flippable_gluings,
    genus_surface,
    make_surface,
    pachner_13,
    pachner_22,
    pachner_31,
    sphere,
    tetrahedron,
    torus,
    with_labels,
)


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    detail: str = ""
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = bool(np.isfinite(self.residual) and self.residual < self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name}: residual {self.residual:.3e} (tol {self.tolerance:.0e})"
        return f"{text} {self.detail}" if self.detail else text

    def as_dict(self) -> dict:
        return {"name": self.name, "residual": self.residual, "tolerance": self.tolerance,
                "passed": self.passed, "detail": self.detail}


def rel(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


# Fixtures


def fixture_algebras() -> dict[str, Algebra]:
    return {
        "C": catalog.ground_field(),
        "C[Z/2]": catalog.cyclic_group_algebra(2),
        "C[Z/3]": catalog.cyclic_group_algebra(3),
        "M_2": catalog.matrix_algebra(2),
    }


def _matchings(slots):
    if not slots:
        yield []
        return
    first, rest = slots[0], slots[1:]
    for k, other in enumerate(rest):
        for m in _matchings(rest[:k] + rest[k + 1:]):
            yield [(first, other)] + m


def fixture_surfaces() -> dict[str, LabeledSurface]:
    """Closed surfaces with at most four triangles."""
    out: dict[str, LabeledSurface] = {}
    slots2 = [(t, e) for t in range(2) for e in range(3)]
    for n, m in enumerate(_matchings(slots2)):
        out[f"T2-matching-{n:02d}"] = make_surface(2, None, m)
    out["sphere"] = sphere()
    out["torus"] = torus()
    out["tetrahedron"] = tetrahedron()
    out["sphere-13"] = pachner_13(sphere(), 0)
    out["torus-13"] = pachner_13(torus(), 1)
    out["sphere+sphere"] = disjoint_union(sphere(), sphere())
    out["sphere+torus"] = disjoint_union(sphere(), torus())
    out["torus+torus"] = disjoint_union(torus(), torus())
    rng = np.random.default_rng(4)
    slots4 = [(t, e) for t in range(4) for e in range(3)]
    for n in range(3):
        perm = [slots4[i] for i in rng.permutation(12)]
        out[f"T4-random-{n}"] = make_surface(4, None, [(perm[2 * i], perm[2 * i + 1]) for i in range(6)])
    return out


def c2_twist_image() -> np.ndarray:
    """i on the idempotent (1+s)/2 and -1 on (1-s)/2: an element of order 4."""
    return np.array([(1j - 1) / 2, (1j + 1) / 2])


def genus_actions() -> dict[str, GAction]:
    """Z/4 acting on the algebras of the functor/state-sum comparison."""
    z4 = make_group([4])
    C, C2, M2 = catalog.ground_field(), catalog.cyclic_group_algebra(2), catalog.matrix_algebra(2)
    return {
        "C": make_action(z4, [[1j]], C),
        "C[Z/2]": make_action(z4, [c2_twist_image()], C2),
        "M_2": make_action(z4, [1j * M2.unit], M2),
    }


# Criteria


def c1_oracle_equivalence(seed: int = 0) -> list[Check]:
    t0 = time.perf_counter()
    checks = []
    for aname, alg in fixture_algebras().items():
        worst, where = 0.0, ""
        for sname, surf in fixture_surfaces().items():
            z = evaluate(surf, alg)
            zb = evaluate_bruteforce(surf, alg, max_colorings=alg.dim ** (3 * surf.num_triangles))
            r = abs(z - zb) / (1 + abs(z))
            if r >= worst:
                worst, where = r, sname
        checks.append(Check(f"C1 oracle equivalence [{aname}]", worst, 1e-10,
                            f"over {len(fixture_surfaces())} surfaces, worst {where}"))
    elapsed = time.perf_counter() - t0
    checks.append(Check("C1 runtime (s)", elapsed, 30.0))
    return checks


def _random_move(rng, surf: LabeledSurface, max_triangles: int = 30):
    options = []
    if surf.num_triangles + 2 <= max_triangles:
        options.append("13")
    corners = degree3_corners(surf)
    if corners:
        options.append("31")
    flips = flippable_gluings(surf)
    if flips:
        options.append("22")
    kind = options[rng.integers(len(options))]
    if kind == "13":
        return pachner_13(surf, int(rng.integers(surf.num_triangles)))
    if kind == "31":
        return pachner_31(surf, corners[rng.integers(len(corners))])
    return pachner_22(surf, flips[rng.integers(len(flips))])


def _random_labels(rng, surf: LabeledSurface) -> LabeledSurface:
    G = surf.group
    labels = [G.element([int(rng.integers(n)) for n in G.orders]) for _ in surf.labels]
    return with_labels(surf, labels)


def _random_start(rng, group: FiniteAbelianGroup) -> LabeledSurface:
    kind = int(rng.integers(5))
    surf = [sphere, torus, tetrahedron, lambda g: genus_surface(2, g),
            lambda g: disjoint_union(sphere(g), torus(g))][kind](group)
    # fatten so that 2-2 and 3-1 moves are available from the start
    for _ in range(int(rng.integers(0, 4))):
        surf = pachner_13(surf, int(rng.integers(surf.num_triangles)))
    return surf


def c2_pachner_invariance(seed: int = 0, sequences: int = 200) -> list[Check]:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, where, longest, biggest = 0.0, "", 0, 0
    for n in range(sequences):
        rb = catalog.random_semisimple(rng, max_dim=6)
        alg = rb.algebra
        orders = [[], [2], [3], [4]][int(rng.integers(4))]
        group = make_group(orders)
        images = [catalog.random_central_root(rng, alg, k) for k in orders]
        action = make_action(group, images, alg)
        surf = _random_labels(rng, _random_start(rng, group))
        z0 = evaluate(surf, alg, action)
        # |Z| can cancel under twisting; the untwisted value bounds it and sets the scale
        scale = max(abs(z0), abs(evaluate(with_labels(surf, None), alg)))
        length = int(rng.integers(1, 11))
        for _ in range(length):
            surf = _random_move(rng, surf)
            biggest = max(biggest, surf.num_triangles)
            r = abs(evaluate(surf, alg, action) - z0) / scale
            if r > worst:
                worst, where = r, f"sequence {n} ({alg.name}, G={group})"
        longest = max(longest, length)
    elapsed = time.perf_counter() - t0
    return [
        Check("C2 Pachner invariance", worst, 1e-8,
              f"{sequences} sequences, max length {longest}, max T {biggest}; worst {where}"),
        Check("C2 runtime (s)", elapsed, 120.0),
    ]


def homotopy_fixtures():
    """(name, algebra, action, total class) with |Z| bounded away from zero."""
    C = catalog.ground_field()
    z4 = make_group([4])
    yield "C, Z/4, phi=i", C, make_action(z4, [[1j]], C), z4.element([3])
    alg = catalog.block_algebra([2, 1])
    g6 = make_group([2, 3])
    omega = np.exp(2j * np.pi / 3)
    minus_one = -alg.unit
    rot = catalog.center_idempotent_image((2, 1), (omega, 1.0))
    yield "M_2+C, Z/2xZ/3", alg, make_action(g6, [minus_one, rot], alg), g6.element([1, 2])


def c3_homotopy_invariance(seed: int = 0, redistributions: int = 100) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    for name, alg, action, total in homotopy_fixtures():
        G = action.group
        worst = 0.0
        for build in (sphere, torus, tetrahedron, lambda g: genus_surface(2, g),
                      lambda g: pachner_13(torus(g), 0)):
            base = build(G)
            labels = [total] + [G.identity()] * (base.num_triangles - 1)
            z0 = evaluate(with_labels(base, labels), alg, action)
            for _ in range(redistributions):
                labs = [G.element([int(rng.integers(n)) for n in G.orders])
                        for _ in range(base.num_triangles - 1)]
                labs.append(total - G.sum(labs))
                perm = rng.permutation(len(labs))
                labs = [labs[i] for i in perm]
                worst = max(worst, rel(evaluate(with_labels(base, labs), alg, action), z0))
        checks.append(Check(f"C3 label redistribution [{name}]", worst, 1e-8,
                            f"{redistributions} redistributions x 5 surfaces"))
        checks.append(Check(f"C3 basic-move tensor identity [{name}]",
                            basic_move_residual(alg, action), 1e-10))
    return checks


def basic_move_residual(alg: Algebra, action: GAction) -> float:
    """max |C(g)_ij^k C(h)_klm - C_ij^k C(g+h)_klm| and the mirrored form."""
    G = action.group
    up = {g: twisted_constants(g, action, alg) for g in G}
    low = {g: np.einsum("ijm,mk->ijk", up[g], alg.metric) for g in G}
    e = G.identity()
    worst = 0.0
    for g, h in itertools.product(G, G):
        lhs = np.einsum("ijk,klm->ijlm", up[g], low[h])
        mid = np.einsum("ijk,klm->ijlm", up[e], low[g + h])
        right = np.einsum("ijk,klm->ijlm", up[g + h], low[e])
        worst = max(worst, float(np.max(np.abs(lhs - mid))), float(np.max(np.abs(lhs - right))))
    return worst


def c4_g_frobenius(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    for orders in ([2], [4], [2, 3]):
        G = make_group(orders)
        for aname, alg in fixture_algebras().items():
            images = [catalog.random_central_root(rng, alg, n) for n in orders]
            action = make_action(G, images, alg)
            res = action.residuals()
            res["frobenius_invariance"] = alg.residuals()["frobenius_invariance"]
            for key, value in res.items():
                checks.append(Check(f"C4 {key} [{G}, {aname}]", value, 1e-10))
    return checks


DUALITY_WORDS = {
    "triangular identity (+)": ("(eta * id(+)) ; (id(+) * eps)", 1),
    "triangular identity (-)": ("(id(-) * eta) ; (eps * id(-))", 1),
    "triangular identity (-, swapped pairings)":
        ("((eta ; swap(+,-)) * id(-)) ; (id(-) * (swap(+,-) ; eps))", 1),
    "triangular identity (+, swapped pairings)":
        ("(id(+) * (eta ; swap(+,-))) ; ((swap(+,-) ; eps) * id(+))", 1),
    "flip ; unflip": ("flip ; unflip", 1),
    "unflip ; flip": ("unflip ; flip", 1),
}


def c5_duality(seed: int = 0) -> list[Check]:
    checks = []
    for aname, alg in fixture_algebras().items():
        for label, (text, strands) in DUALITY_WORDS.items():
            m = evaluate_word(parse(text), alg)
            eye = np.eye(alg.dim**strands)
            checks.append(Check(f"C5 {label} [{aname}]", float(np.max(np.abs(m - eye))), 1e-10))
    return checks


SMALL_GROUPS = [[], [2], [3], [4], [2, 2], [5], [6], [2, 3], [7], [8], [2, 4], [2, 2, 2],
                [9], [3, 3], [10], [11], [12], [2, 6], [3, 4]]


def c6_gluing(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    for aname, alg in fixture_algebras().items():
        worst, count = 0.0, 0
        for orders in SMALL_GROUPS:
            G = make_group(orders)
            action = make_action(G, [catalog.random_central_root(rng, alg, n) for n in orders], alg)
            twist = {g: evaluate_word(f"twist([{','.join(map(str, g.residues))}])", alg, action)
                     for g in G}
            for g, h in itertools.product(G, G):
                word = parse(f"twist([{','.join(map(str, g.residues))}]) ; "
                             f"twist([{','.join(map(str, h.residues))}])")
                m = evaluate_word(word, alg, action)
                worst = max(worst, float(np.max(np.abs(m - twist[g + h]))))
                count += 1
        checks.append(Check(f"C6 twist(g);twist(h) = twist(g+h) [{aname}]", worst, 1e-10,
                            f"{count} pairs over {len(SMALL_GROUPS)} groups"))
    return checks


def c7_functor_statesum(seed: int = 0, algebras=None, genera=(0, 1, 2)) -> list[Check]:
    checks = []
    actions = genus_actions()
    for aname, action in actions.items():
        if algebras is not None and aname not in algebras:
            continue
        alg, G = action.algebra, action.group
        for h in genera:
            worst, detail = 0.0, ""
            for g in G:
                z_ss = evaluate(genus_surface(h, G, g), alg, action)
                z_w = complex(evaluate_word(closed_genus_word(h, g), alg, action)[0, 0])
                r = rel(z_ss, z_w)
                if r >= worst:
                    worst = r
                    detail = f"worst class {g.to_list()}: statesum {z_ss:.6g}, word {z_w:.6g}"
            checks.append(Check(f"C7 functor vs state sum [{aname}, genus {h}]", worst, 1e-8, detail))
    if algebras is None:
        checks.extend(c7_concrete_values())
    return checks


def c7_concrete_values() -> list[Check]:
    checks = []
    action = genus_actions()["C"]
    G = action.group
    worst = 0.0
    for k in range(4):
        z = evaluate(torus(G, [[k]]), action.algebra, action)
        worst = max(worst, abs(z - 1j**k))
    checks.append(Check("C7 twisted torus over C equals i^k", worst, 1e-8))
    z = evaluate(torus(), catalog.block_algebra([2, 1]))
    checks.append(Check("C7 torus over M_2+C equals 2", abs(z - 2) / 2, 1e-8))
    return checks


def c8_classification(seed: int = 0) -> list[Check]:
    from .cli import cmd_check_algebra

    C, C2, C3 = catalog.ground_field(), catalog.cyclic_group_algebra(2), catalog.cyclic_group_algebra(3)
    M2, M2C = catalog.matrix_algebra(2), catalog.block_algebra([2, 1])
    d, Cdual, u = catalog.dual_numbers_constants()
    swap = np.array([0, 1, 1, 0], dtype=complex)
    # (name, algebra json, orders or None, images or None, expected exit, expected error)
    cases = [
        ("C", io.algebra_to_json(C), None, None, 0, None),
        ("C[Z/2]", io.algebra_to_json(C2), None, None, 0, None),
        ("C[Z/3]", io.algebra_to_json(C3), None, None, 0, None),
        ("M_2", io.algebra_to_json(M2), None, None, 0, None),
        ("M_2+C", io.algebra_to_json(M2C), None, None, 0, None),
        ("C, Z/4, i", io.algebra_to_json(C), [4], [[1j]], 0, None),
        ("M_2, Z/2, -1", io.algebra_to_json(M2), [2], [-M2.unit], 0, None),
        ("C[Z/2], Z/4", io.algebra_to_json(C2), [4], [c2_twist_image()], 0, None),
        ("dual numbers",
         {"dim": d, "unit": [[x, 0.0] for x in u],
          "structure": [[int(i), int(j), int(k), 1.0, 0.0] for i, j, k in zip(*np.nonzero(Cdual))]},
         None, None, 2, "SingularMetric"),
        ("M_2, Z/2, swap matrix", io.algebra_to_json(M2), [2], [swap], 1, "NotCentral"),
        ("C[Z/2], Z/2, zero", io.algebra_to_json(C2), [2], [np.zeros(2)], 1, "NotInvertible"),
        ("C, Z/4, 2", io.algebra_to_json(C), [4], [[2.0]], 1, "OrderViolation"),
    ]
    checks = []
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for n, (name, alg_json, orders, images, want_exit, want_err) in enumerate(cases):
            apath = tmp / f"alg{n}.json"
            io.save(apath, alg_json)
            gpath = apath_act = None
            if orders is not None:
                gpath, apath_act = tmp / f"group{n}.json", tmp / f"act{n}.json"
                io.save(gpath, {"orders": orders})
                io.save(apath_act, {"images": [[[complex(z).real, complex(z).imag] for z in img]
                                               for img in images]})
            report, code = cmd_check_algebra(apath, gpath, apath_act)
            ok = code == want_exit and report.get("error") == want_err
            verdict = "accepted" if code == 0 else f"rejected ({report.get('error')})"
            checks.append(Check(f"C8 check-algebra [{name}]", 0.0 if ok else 1.0, 0.5,
                                f"{verdict}, exit {code}"))
    return checks


CRITERIA: dict[int, tuple[str, Callable[..., list[Check]]]] = {
    1: ("oracle equivalence", c1_oracle_equivalence),
    2: ("Pachner invariance", c2_pachner_invariance),
    3: ("homotopy invariance", c3_homotopy_invariance),
    4: ("G-Frobenius axioms and homomorphism law", c4_g_frobenius),
    5: ("duality", c5_duality),
    6: ("gluing theorem", c6_gluing),
    7: ("functor / state-sum agreement", c7_functor_statesum),
    8: ("classification smoke test", c8_classification),
}


def run_criterion(number: int, seed: int = 0, tol: float | None = None) -> list[Check]:
    _, fn = CRITERIA[number]
    checks = fn(seed)
    if tol is not None:
        checks = [replace(c, tolerance=tol) if "runtime" not in c.name else c for c in checks]
    return checks


def run_acceptance(seed: int = 0, parallel: bool = False, tol: float | None = None,
                   criteria=None) -> dict:
    numbers = sorted(criteria or CRITERIA)
    if parallel:
        with ThreadPoolExecutor() as pool:
            results = dict(zip(numbers, pool.map(lambda k: run_criterion(k, seed, tol), numbers)))
    else:
        results = {k: run_criterion(k, seed, tol) for k in numbers}
    summary = []
    checks = []
    for k in numbers:
        cs = sorted(results[k], key=lambda c: c.name)
        checks.extend(cs)
        summary.append({"criterion": k, "name": CRITERIA[k][0], "passed": all(c.passed for c in cs)})
    return {"criteria": summary, "checks": [c.as_dict() for c in checks],
            "passed": all(s["passed"] for s in summary)}
