"""Semisimple algebras given by structure constants, with the trace-form
Frobenius structure and a central action of a finite abelian group.

Conventions: ``structure[i, j, k]`` is the coefficient of ``e_k`` in
``e_i e_j``.  Vectors are complex coefficient arrays in the basis ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    BadUnit,
    DimensionMismatch,
    GroupMismatch,
    NotAssociative,
    NotCentral,
    NotInvertible,
    OrderViolation,
    SingularMetric,
)
from .group import FiniteAbelianGroup, GroupElement

DEFAULT_TOL = 1e-9


def _relative_rank_deficient(matrix: np.ndarray, tol: float) -> bool:
    s = np.linalg.svd(matrix, compute_uv=False)
    if s.size == 0:
        return False
    return s[-1] <= tol * s[0] or s[0] == 0.0


@dataclass(frozen=True, eq=False)
class Algebra:
    """Finite-dimensional associative unital algebra over C.

    Build instances with :func:`make_algebra`, which validates the axioms and
    derives ``metric`` (g_ij = sum_{k,l} C_ik^l C_jl^k, the trace of
    L_{e_i} L_{e_j}) and its inverse.
    """

    structure: np.ndarray
    unit: np.ndarray
    metric: np.ndarray
    inv_metric: np.ndarray
    tolerance: float = DEFAULT_TOL
    name: str = field(default="")

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    @cached_property
    def lowered(self) -> np.ndarray:
        """C_ijk = sum_m C_ij^m g_mk."""
        return np.einsum("ijm,mk->ijk", self.structure, self.metric)

    def multiply(self, a, b) -> np.ndarray:
        return multiply(a, b, self)

    def left(self, a) -> np.ndarray:
        return left_mult_matrix(a, self)

    def right(self, a) -> np.ndarray:
        return right_mult_matrix(a, self)

    def form(self, a, b) -> complex:
        """The Frobenius pairing g(a, b)."""
        return complex(np.asarray(a) @ self.metric @ np.asarray(b))

    def basis(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def residuals(self) -> dict[str, float]:
        """Max-abs residual of every algebra-level invariant."""
        C, g, d = self.structure, self.metric, self.dim
        res = {
            "associativity": _associativity_residual(C),
            "unit": _unit_residual(C, self.unit),
            "metric_symmetric": float(np.max(np.abs(g - g.T))),
            "metric_inverse": float(np.max(np.abs(g @ self.inv_metric - np.eye(d)))),
        }
        low = self.lowered
        res["cyclic_constants"] = float(np.max(np.abs(low - low.transpose(1, 2, 0))))
        # g(ab, c) = g(a, bc)
        lhs = np.einsum("abm,mc->abc", C, g)
        rhs = np.einsum("bcm,am->abc", C, g)
        res["frobenius_invariance"] = float(np.max(np.abs(lhs - rhs)))
        return res

    def __repr__(self):
        return f"Algebra(name={self.name!r}, dim={self.dim})"


def _associativity_residual(C: np.ndarray) -> float:
    # (e_i e_j) e_k versus e_i (e_j e_k)
    lhs = np.einsum("ijm,mkl->ijkl", C, C)
    rhs = np.einsum("jkm,iml->ijkl", C, C)
    return float(np.max(np.abs(lhs - rhs)))


def _unit_residual(C: np.ndarray, u: np.ndarray) -> float:
    d = C.shape[0]
    eye = np.eye(d)
    left = np.einsum("i,ijk->kj", u, C)   # u e_j
    right = np.einsum("j,ijk->ki", u, C)  # e_i u
    return float(max(np.max(np.abs(left - eye)), np.max(np.abs(right - eye))))


def make_algebra(dim, structure, unit, tolerance: float = DEFAULT_TOL, name: str = "") -> Algebra:
    C = np.asarray(structure, dtype=complex)
    u = np.asarray(unit, dtype=complex)
    d = int(dim)
    if d < 1:
        raise DimensionMismatch(f"algebra dimension must be >= 1, got {d}")
    if C.shape != (d, d, d):
        raise DimensionMismatch(f"structure has shape {C.shape}, expected {(d, d, d)}")
    if u.shape != (d,):
        raise DimensionMismatch(f"unit has shape {u.shape}, expected ({d},)")
    if not (np.all(np.isfinite(C)) and np.all(np.isfinite(u))):
        raise DimensionMismatch("structure constants and unit must be finite")

    assoc = _associativity_residual(C)
    if assoc >= tolerance:
        raise NotAssociative(f"associativity residual {assoc:.3e} >= {tolerance:.1e}")
    unit_res = _unit_residual(C, u)
    if unit_res >= tolerance:
        raise BadUnit(f"unit residual {unit_res:.3e} >= {tolerance:.1e}")

    metric = np.einsum("ikl,jlk->ij", C, C)
    if _relative_rank_deficient(metric, tolerance):
        raise SingularMetric("trace form is degenerate; the algebra is not semisimple")
    inv_metric = np.linalg.inv(metric)
    C.setflags(write=False)
    u.setflags(write=False)
    metric.setflags(write=False)
    inv_metric.setflags(write=False)
    return Algebra(C, u, metric, inv_metric, float(tolerance), name)


def _vector(a, alg: Algebra) -> np.ndarray:
    v = np.asarray(a, dtype=complex)
    if v.shape != (alg.dim,):
        raise DimensionMismatch(f"vector of shape {v.shape} in algebra of dim {alg.dim}")
    return v


def multiply(a, b, alg: Algebra) -> np.ndarray:
    a = _vector(a, alg)
    b = _vector(b, alg)
    return np.einsum("i,j,ijk->k", a, b, alg.structure)


def left_mult_matrix(a, alg: Algebra) -> np.ndarray:
    """M with M[k, j] = sum_i a_i C_ij^k, so that M @ b == a b."""
    return np.einsum("i,ijk->kj", _vector(a, alg), alg.structure)


def right_mult_matrix(a, alg: Algebra) -> np.ndarray:
    """M with M @ b == b a."""
    return np.einsum("i,jik->kj", _vector(a, alg), alg.structure)


def center_basis(alg: Algebra) -> list[np.ndarray]:
    """Basis of Z(A): the joint kernel of L_{e_j} - R_{e_j} over all j."""
    d = alg.dim
    system = np.vstack([alg.right(e) - alg.left(e) for e in alg.basis()])
    _, s, vh = np.linalg.svd(system)
    smax = s[0] if s.size else 0.0
    null = [i for i in range(d) if smax == 0.0 or s[i] <= alg.tolerance * smax]
    return [vh[i].conj() for i in null]


@dataclass(frozen=True, eq=False)
class GAction:
    """A homomorphism G -> Z(A)^*, stored as the images of the generators."""

    group: FiniteAbelianGroup
    images: tuple[np.ndarray, ...]
    algebra: Algebra

    def __post_init__(self):
        object.__setattr__(self, "_cache", {})

    def image(self, g: GroupElement) -> np.ndarray:
        """phi(g) as a vector of A."""
        if g.group != self.group:
            raise GroupMismatch(
                f"element of {list(g.group.orders)} acted on by {list(self.group.orders)}"
            )
        cache = self._cache
        if g.residues not in cache:
            alg = self.algebra
            v = np.array(alg.unit, dtype=complex)
            for img, r in zip(self.images, g.residues):
                L = alg.left(img)
                for _ in range(r):
                    v = L @ v
            cache[g.residues] = v
        return cache[g.residues]

    def residuals(self) -> dict[str, float]:
        """G-Frobenius and homomorphism residuals over all of G."""
        alg = self.algebra
        elements = self.group.enumerate()
        C = alg.structure
        hom = act_mult = form_res = 0.0
        for g in elements:
            Lg = alg.left(self.image(g))
            # v (g.w) = g.(v w) = (g.v) w  for all basis v, w
            vw = np.einsum("ijk->kij", C)                   # [k, v, w]
            g_vw = np.einsum("ak,kij->aij", Lg, vw)
            v_gw = np.einsum("ijk,jw->kiw", C, Lg)
            gv_w = np.einsum("ijk,iv->kvj", C, Lg)
            act_mult = max(act_mult, float(np.max(np.abs(g_vw - v_gw))),
                           float(np.max(np.abs(g_vw - gv_w))))
            # (v, g.w) = (g.v, w)
            lhs = alg.metric @ Lg
            rhs = Lg.T @ alg.metric
            form_res = max(form_res, float(np.max(np.abs(lhs - rhs))))
            for h in elements:
                prod = alg.multiply(self.image(g), self.image(h))
                hom = max(hom, float(np.max(np.abs(self.image(g + h) - prod))))
        return {"action_product": act_mult, "action_form": form_res, "homomorphism": hom}


def make_action(group: FiniteAbelianGroup, images, alg: Algebra) -> GAction:
    images = [np.asarray(x, dtype=complex) for x in images]
    if len(images) != group.rank:
        raise DimensionMismatch(
            f"{len(images)} generator images for a group with {group.rank} generators"
        )
    tol = alg.tolerance
    for i, (x, n) in enumerate(zip(images, group.orders)):
        x = _vector(x, alg)
        commutator = max(
            float(np.max(np.abs(alg.multiply(x, e) - alg.multiply(e, x)))) for e in alg.basis()
        )
        if commutator >= tol:
            raise NotCentral(
                f"image of generator {i} is not central (commutator residual {commutator:.3e})",
                generator=i,
            )
        if _relative_rank_deficient(alg.left(x), tol):
            raise NotInvertible(f"image of generator {i} is not invertible", generator=i)
        power = np.array(alg.unit, dtype=complex)
        L = alg.left(x)
        for _ in range(n):
            power = L @ power
        err = float(np.max(np.abs(power - alg.unit)))
        if err >= tol:
            raise OrderViolation(
                f"image of generator {i} raised to {n} differs from the unit by {err:.3e}",
                generator=i,
            )
        x.setflags(write=False)
        images[i] = x
    return GAction(group, tuple(images), alg)


def trivial_action(alg: Algebra, group: FiniteAbelianGroup | None = None) -> GAction:
    """Every generator acts by the unit (for the trivial group: no generators)."""
    group = group or FiniteAbelianGroup(())
    return make_action(group, [alg.unit] * group.rank, alg)


def act(g: GroupElement, v, action: GAction, alg: Algebra | None = None) -> np.ndarray:
    alg = alg or action.algebra
    return multiply(action.image(g), v, alg)


def twisted_constants(g: GroupElement, action: GAction, alg: Algebra | None = None) -> np.ndarray:
    """C(g)_jl^m = ((g.e_j) e_l)_m."""
    alg = alg or action.algebra
    Lg = alg.left(action.image(g))
    return np.einsum("kj,klm->jlm", Lg, alg.structure)
