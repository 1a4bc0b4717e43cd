"""Standard algebras used as fixtures and in randomized suites."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .frobenius import DEFAULT_TOL, Algebra, center_basis, make_algebra


def ground_field(tolerance: float = DEFAULT_TOL) -> Algebra:
    return make_algebra(1, [[[1.0]]], [1.0], tolerance, name="C")


def cyclic_group_algebra(n: int, tolerance: float = DEFAULT_TOL) -> Algebra:
    """C[Z/n] in the basis of group elements s^0, ..., s^{n-1}."""
    C = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            C[i, j, (i + j) % n] = 1.0
    u = np.zeros(n)
    u[0] = 1.0
    return make_algebra(n, C, u, tolerance, name=f"C[Z/{n}]")


def matrix_algebra(n: int, tolerance: float = DEFAULT_TOL) -> Algebra:
    """M_n in the matrix-unit basis e_ab, ordered row-major (e11, e12, ...)."""
    d = n * n
    C = np.zeros((d, d, d))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                C[a * n + b, b * n + c, a * n + c] = 1.0
    u = np.zeros(d)
    for a in range(n):
        u[a * n + a] = 1.0
    return make_algebra(d, C, u, tolerance, name=f"M_{n}")


def dual_numbers_constants() -> tuple[int, np.ndarray, np.ndarray]:
    """C[x]/x^2: unital and associative but with a degenerate trace form."""
    C = np.zeros((2, 2, 2))
    C[0, 0, 0] = C[0, 1, 1] = C[1, 0, 1] = 1.0
    return 2, C, np.array([1.0, 0.0])


def direct_sum(*algebras: Algebra, tolerance: float = DEFAULT_TOL) -> Algebra:
    dims = [a.dim for a in algebras]
    d = sum(dims)
    C = np.zeros((d, d, d), dtype=complex)
    u = np.zeros(d, dtype=complex)
    off = 0
    for a in algebras:
        s = slice(off, off + a.dim)
        C[s, s, s] = a.structure
        u[s] = a.unit
        off += a.dim
    name = " + ".join(a.name for a in algebras)
    return make_algebra(d, C, u, tolerance, name=name)


def block_algebra(sizes, tolerance: float = DEFAULT_TOL) -> Algebra:
    """M_{n1} + M_{n2} + ... in matrix-unit bases."""
    return direct_sum(*(matrix_algebra(n, tolerance) for n in sizes), tolerance=tolerance)


def change_basis(alg: Algebra, P: np.ndarray, tolerance: float | None = None) -> Algebra:
    """Same algebra in the basis f_i = sum_a P[a, i] e_a."""
    P = np.asarray(P, dtype=complex)
    Pinv = np.linalg.inv(P)
    C = np.einsum("ai,bj,abc,kc->ijk", P, P, alg.structure, Pinv)
    u = Pinv @ alg.unit
    tol = alg.tolerance if tolerance is None else tolerance
    return make_algebra(alg.dim, C, u, tol, name=f"{alg.name} (rebased)")


class RandomBlockAlgebra(NamedTuple):
    algebra: Algebra
    sizes: tuple[int, ...]
    basis: np.ndarray  # columns: new basis vectors in matrix-unit coordinates

    def central(self, scalars) -> np.ndarray:
        """sum_k scalars[k] * 1_{block k}, in the algebra's own coordinates."""
        v = center_idempotent_image(self.sizes, scalars)
        return np.linalg.solve(self.basis, v)


def random_semisimple(rng: np.random.Generator, max_dim: int = 6, tolerance: float = DEFAULT_TOL,
                      rebase: bool = True) -> RandomBlockAlgebra:
    """Random block sum of matrix algebras with total dimension <= max_dim,
    optionally in a random well-conditioned complex basis."""
    sizes = []
    budget = max_dim
    while budget >= 1:
        n = int(rng.choice([n for n in (1, 2) if n * n <= budget]))
        sizes.append(n)
        budget -= n * n
        if rng.random() < 0.35:
            break
    alg = block_algebra(sizes, tolerance)
    d = alg.dim
    if not rebase:
        return RandomBlockAlgebra(alg, tuple(sizes), np.eye(d, dtype=complex))
    # unitary times a mild diagonal keeps the condition number below 4
    Q, _ = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    P = Q @ np.diag(rng.uniform(0.5, 2.0, size=d))
    return RandomBlockAlgebra(change_basis(alg, P), tuple(sizes), P)


def center_idempotent_image(sizes, scalars) -> np.ndarray:
    """The central element sum_k scalars[k] * 1_{block k} of
    ``block_algebra(sizes)`` in matrix-unit coordinates."""
    parts = []
    for n, z in zip(sizes, scalars):
        block = np.zeros(n * n, dtype=complex)
        for a in range(n):
            block[a * n + a] = z
        parts.append(block)
    return np.concatenate(parts)


def central_idempotents(alg: Algebra, rng: np.random.Generator | None = None) -> list[np.ndarray]:
    """Primitive idempotents of Z(A), from the eigenvectors of multiplication
    by a generic central element restricted to the center."""
    rng = rng or np.random.default_rng(0)
    Z = np.array(center_basis(alg)).T  # d x k
    k = Z.shape[1]
    z = Z @ (rng.normal(size=k) + 1j * rng.normal(size=k))
    M, *_ = np.linalg.lstsq(Z, alg.left(z) @ Z, rcond=None)
    _, W = np.linalg.eig(M)
    out = []
    for w in W.T:
        q = Z @ w
        # q^2 = c q for an idempotent direction q
        q2 = alg.multiply(q, q)
        c = np.vdot(q, q2) / np.vdot(q, q)
        out.append(q / c)
    return out


def random_central_root(rng: np.random.Generator, alg: Algebra, order: int) -> np.ndarray:
    """A random central x with x**order == 1: a root of unity on each block."""
    parts = central_idempotents(alg, rng)
    x = np.zeros(alg.dim, dtype=complex)
    for p in parts:
        x += np.exp(2j * np.pi * rng.integers(order) / order) * p
    return x
