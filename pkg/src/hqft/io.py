"""JSON file formats for groups, algebras, actions and surfaces.

All indices are 0-based and complex numbers are ``[re, im]`` pairs.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import HQFTError
from .frobenius import DEFAULT_TOL, Algebra, GAction, make_action, make_algebra
from .group import TRIVIAL_GROUP, FiniteAbelianGroup
from .surface import LabeledSurface, make_surface


class BadFile(HQFTError, ValueError):
    code = "BadFile"


def _read(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise BadFile(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise BadFile(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _write(path, data) -> None:
    Path(path).write_text(json.dumps(data, indent=1) + "\n")


def digest(path) -> str:
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError as exc:
        raise BadFile(f"cannot read {path}: {exc.strerror}") from exc


def _complex(pair, where: str) -> complex:
    try:
        re, im = pair
        return complex(float(re), float(im))
    except (TypeError, ValueError) as exc:
        raise BadFile(f"{where}: expected [re, im], got {pair!r}") from exc


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


# group


def group_from_json(data) -> FiniteAbelianGroup:
    if not isinstance(data, dict) or "orders" not in data:
        raise BadFile('group file must be an object with "orders"')
    return FiniteAbelianGroup(tuple(int(n) for n in data["orders"]))


def load_group(path) -> FiniteAbelianGroup:
    return group_from_json(_read(path))


def group_to_json(group: FiniteAbelianGroup) -> dict:
    return {"orders": list(group.orders)}


# algebra


def algebra_from_json(data, tolerance: float = DEFAULT_TOL, name: str = "") -> Algebra:
    try:
        d = int(data["dim"])
        unit_pairs = data["unit"]
        entries = data["structure"]
    except (TypeError, KeyError) as exc:
        raise BadFile('algebra file needs "dim", "unit" and "structure"') from exc
    if d < 1:
        raise BadFile(f"algebra dimension {d} < 1")
    C = np.zeros((d, d, d), dtype=complex)
    for n, entry in enumerate(entries):
        if len(entry) != 5:
            raise BadFile(f"structure entry {n} must be [i, j, k, re, im]")
        i, j, k = (int(x) for x in entry[:3])
        if not all(0 <= x < d for x in (i, j, k)):
            raise BadFile(f"structure entry {n} has an index outside 0..{d - 1}")
        C[i, j, k] += _complex(entry[3:], f"structure entry {n}")
    if len(unit_pairs) != d:
        raise BadFile(f"unit has {len(unit_pairs)} entries, expected {d}")
    u = np.array([_complex(p, f"unit entry {n}") for n, p in enumerate(unit_pairs)])
    return make_algebra(d, C, u, tolerance, name=name)


def load_algebra(path, tolerance: float = DEFAULT_TOL) -> Algebra:
    return algebra_from_json(_read(path), tolerance, name=Path(path).stem)


def algebra_to_json(alg: Algebra) -> dict:
    C = alg.structure
    entries = [
        [int(i), int(j), int(k), *_pair(C[i, j, k])] for i, j, k in zip(*np.nonzero(C))
    ]
    return {"dim": alg.dim, "unit": [_pair(z) for z in alg.unit], "structure": entries}


# action


def action_from_json(data, group: FiniteAbelianGroup, alg: Algebra) -> GAction:
    if not isinstance(data, dict) or "images" not in data:
        raise BadFile('action file must be an object with "images"')
    images = [
        [_complex(p, f"image {g} entry {n}") for n, p in enumerate(vec)]
        for g, vec in enumerate(data["images"])
    ]
    return make_action(group, images, alg)


def load_action(path, group: FiniteAbelianGroup, alg: Algebra) -> GAction:
    return action_from_json(_read(path), group, alg)


def action_to_json(action: GAction) -> dict:
    return {"images": [[_pair(z) for z in img] for img in action.images]}


# surface


def surface_from_json(data, group: FiniteAbelianGroup = TRIVIAL_GROUP) -> LabeledSurface:
    try:
        triangles = data["triangles"]
        gluings = data["gluings"]
    except (TypeError, KeyError) as exc:
        raise BadFile('surface file needs "triangles" and "gluings"') from exc
    labels = [tri.get("label") if isinstance(tri, dict) else None for tri in triangles]
    return make_surface(len(triangles), labels, gluings, group)


def load_surface(path, group: FiniteAbelianGroup = TRIVIAL_GROUP) -> LabeledSurface:
    return surface_from_json(_read(path), group)


def surface_to_json(surface: LabeledSurface) -> dict:
    triangles = [
        {} if lab.is_identity() else {"label": lab.to_list()} for lab in surface.labels
    ]
    gluings = [[list(a), list(b)] for a, b in surface.gluings]
    return {"triangles": triangles, "gluings": gluings}


def save(path, data: dict) -> None:
    _write(path, data)
