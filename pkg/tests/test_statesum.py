import numpy as np
import pytest

from hqft import catalog
from hqft.errors import PlanOverflow, TooLarge
from hqft.frobenius import make_action
from hqft.group import make_group
from hqft.statesum import (
    edge_propagator,
    evaluate,
    evaluate_bruteforce,
    plan_contraction,
    vertex_tensor,
)
from hqft.frobenius import trivial_action
from hqft.surface import (
    disjoint_union,
    dual_graph,
    genus_surface,
    graph_from_edges,
    make_surface,
    pachner_13,
    sphere,
    tetrahedron,
    torus,
    with_labels,
)


def test_sphere_ground_field():
    assert evaluate(sphere(), catalog.ground_field()) == pytest.approx(1.0)


def test_torus_block_algebra():
    assert evaluate(torus(), catalog.block_algebra([2, 1])) == pytest.approx(2.0)


@pytest.mark.parametrize("k", range(4))
def test_twisted_torus(k):
    C = catalog.ground_field()
    z4 = make_group([4])
    action = make_action(z4, [[1j]], C)
    assert evaluate(torus(z4, [[k]]), C, action) == pytest.approx(1j**k)


@pytest.mark.parametrize("h", [0, 1, 2])
def test_semisimple_closed_form(h):
    # sum over blocks of n^(2 - 2h)
    alg = catalog.block_algebra([2, 1])
    expected = 2.0 ** (2 - 2 * h) + 1.0
    assert evaluate(genus_surface(h), alg) == pytest.approx(expected)


def test_planner_matches_oracle(fixture_algebra):
    for surf in (sphere(), torus(), tetrahedron(), pachner_13(torus(), 0)):
        if fixture_algebra.dim ** (3 * surf.num_triangles) > 10**7:
            continue
        z = evaluate(surf, fixture_algebra)
        assert z == pytest.approx(evaluate_bruteforce(surf, fixture_algebra), abs=1e-10 * (1 + abs(z)))


def test_twisted_oracle_m2_plus_c():
    alg = catalog.block_algebra([2, 1])
    z2 = make_group([2])
    action = make_action(z2, [catalog.center_idempotent_image((2, 1), (-1, 1))], alg)
    surf = torus(z2, [[1], [0]])
    assert evaluate(surf, alg, action) == pytest.approx(evaluate_bruteforce(surf, alg, action))


def test_disconnected_is_product():
    alg = catalog.block_algebra([2, 1])
    both = disjoint_union(torus(), sphere())
    assert evaluate(both, alg) == pytest.approx(evaluate(torus(), alg) * evaluate(sphere(), alg))


def test_empty_surface():
    assert evaluate(make_surface(0), catalog.matrix_algebra(2)) == 1


def test_vertex_tensor_cyclic(fixture_algebra):
    surf = sphere()
    V = vertex_tensor(0, surf, fixture_algebra, trivial_action(fixture_algebra))
    assert np.allclose(V, np.transpose(V, (1, 2, 0)))
    assert np.allclose(edge_propagator(fixture_algebra) @ fixture_algebra.metric, np.eye(fixture_algebra.dim))


def test_path_graph_plan():
    graph = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    plan = plan_contraction(graph)
    assert len(plan.steps) == 3
    assert plan.edges_contracted() == 3
    assert [(s.left, s.right) for s in plan.steps] == [(0, 1), (0, 2), (0, 3)]


def test_plan_contracts_every_edge():
    surf = genus_surface(3)
    graph = dual_graph(surf)
    plan = plan_contraction(graph)
    assert plan.edges_contracted() == len(graph.edges)
    assert len(plan.steps) == surf.num_triangles - 1
    assert plan.steps[-1].open_flags == ()
    assert plan.cost(2) > 0


def test_plan_overflow():
    with pytest.raises(PlanOverflow):
        evaluate(genus_surface(2), catalog.matrix_algebra(2), size_cap=10)


def test_oracle_guard():
    with pytest.raises(TooLarge):
        evaluate_bruteforce(genus_surface(2), catalog.matrix_algebra(2))


def test_labels_only_matter_through_total():
    C = catalog.ground_field()
    z4 = make_group([4])
    action = make_action(z4, [[1j]], C)
    surf = tetrahedron(z4)
    a = evaluate(with_labels(surf, [[1], [1], [0], [0]]), C, action)
    b = evaluate(with_labels(surf, [[0], [0], [0], [2]]), C, action)
    assert a == pytest.approx(b) == pytest.approx(-1)
