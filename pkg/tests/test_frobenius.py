import numpy as np
import pytest

from hqft import catalog
from hqft.errors import (
    BadUnit,
    DimensionMismatch,
    NotAssociative,
    NotCentral,
    NotInvertible,
    OrderViolation,
    SingularMetric,
)
from hqft.frobenius import (
    center_basis,
    left_mult_matrix,
    make_action,
    make_algebra,
    multiply,
    right_mult_matrix,
    trivial_action,
    twisted_constants,
)
from hqft.group import make_group


def test_ground_field_metric():
    alg = catalog.ground_field()
    assert np.allclose(alg.metric, [[1.0]])
    assert np.allclose(alg.inv_metric, [[1.0]])


def test_cyclic_trace_metric():
    # trace of L_{s^i} L_{s^j} is n when i + j = 0 mod n
    alg = catalog.cyclic_group_algebra(3)
    expected = np.zeros((3, 3))
    for i in range(3):
        expected[i, (-i) % 3] = 3
    assert np.allclose(alg.metric, expected)


def test_matrix_algebra_metric_is_twice_transpose_pairing():
    alg = catalog.matrix_algebra(2)
    # tr(L_{e_ab} L_{e_cd}) = 2 * delta_bc delta_ad
    g = np.zeros((4, 4))
    for a in range(2):
        for b in range(2):
            g[2 * a + b, 2 * b + a] = 2
    assert np.allclose(alg.metric, g)


def test_residuals_small(fixture_algebra):
    for key, value in fixture_algebra.residuals().items():
        assert value < 1e-12, key


def test_lowered_constants_cyclic(fixture_algebra):
    L = fixture_algebra.lowered
    assert np.allclose(L, np.transpose(L, (1, 2, 0)))


def test_dual_numbers_singular():
    d, C, u = catalog.dual_numbers_constants()
    with pytest.raises(SingularMetric):
        make_algebra(d, C, u)


def test_validation_errors():
    with pytest.raises(DimensionMismatch):
        make_algebra(2, np.zeros((2, 2, 3)), [1, 0])
    C = np.zeros((2, 2, 2))
    C[0, 0, 1] = 1.0
    C[1, 1, 0] = 1.0
    with pytest.raises(NotAssociative):
        make_algebra(2, C, [1, 0])
    alg = catalog.cyclic_group_algebra(2)
    with pytest.raises(BadUnit):
        make_algebra(2, alg.structure, [0, 1])


def test_multiplication_helpers():
    alg = catalog.matrix_algebra(2)
    a = np.array([1, 2, 3, 4], dtype=complex)
    b = np.array([0, 1, -1, 2], dtype=complex)
    ref = (a.reshape(2, 2) @ b.reshape(2, 2)).ravel()
    assert np.allclose(multiply(a, b, alg), ref)
    assert np.allclose(left_mult_matrix(a, alg) @ b, ref)
    assert np.allclose(right_mult_matrix(b, alg) @ a, ref)


def test_center_dimensions():
    assert len(center_basis(catalog.cyclic_group_algebra(2))) == 2
    assert len(center_basis(catalog.matrix_algebra(2))) == 1
    assert len(center_basis(catalog.block_algebra([2, 1, 1]))) == 3


def test_action_errors():
    M2 = catalog.matrix_algebra(2)
    z2 = make_group([2])
    with pytest.raises(NotCentral) as info:
        make_action(z2, [[0, 1, 1, 0]], M2)
    assert info.value.generator == 0
    with pytest.raises(NotInvertible):
        make_action(z2, [[0, 0]], catalog.cyclic_group_algebra(2))
    with pytest.raises(OrderViolation):
        make_action(make_group([4]), [[2.0]], catalog.ground_field())
    with pytest.raises(DimensionMismatch):
        make_action(z2, [], M2)


def test_action_image_and_residuals():
    M2 = catalog.matrix_algebra(2)
    z4 = make_group([4])
    action = make_action(z4, [1j * M2.unit], M2)
    assert np.allclose(action.image(z4.element([2])), -M2.unit)
    assert max(action.residuals().values()) < 1e-12


def test_twisted_constants_c2_with_image_s():
    alg = catalog.cyclic_group_algebra(2)
    z2 = make_group([2])
    action = make_action(z2, [[0, 1]], alg)
    Cg = twisted_constants(z2.element([1]), action, alg)
    # C(g)_jl^m = coefficient of s^m in s * s^j * s^l
    for j in range(2):
        for l in range(2):
            for m in range(2):
                assert Cg[j, l, m] == pytest.approx(1.0 if (1 + j + l) % 2 == m else 0.0)
    low = np.einsum("ijm,mk->ijk", Cg, alg.metric)
    assert np.allclose(low, np.transpose(low, (1, 2, 0)))


def test_trivial_action_is_untwisted(fixture_algebra):
    action = trivial_action(fixture_algebra, make_group([3]))
    for g in action.group:
        assert np.allclose(twisted_constants(g, action, fixture_algebra), fixture_algebra.structure)


def test_random_semisimple_rebased(rng):
    for _ in range(10):
        rb = catalog.random_semisimple(rng, max_dim=6)
        assert rb.algebra.dim <= 6
        assert max(rb.algebra.residuals().values()) < 1e-9
        x = catalog.random_central_root(rng, rb.algebra, 4)
        action = make_action(make_group([4]), [x], rb.algebra)
        assert max(action.residuals().values()) < 1e-9
