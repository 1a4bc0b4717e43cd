"""Partition function Z(M, T, g) of a labeled triangulated surface.

The dual graph is read as a tensor network: a triangle labeled ``g``
contributes the lowered twisted constants C(g)_ijk with its indices in the
order of edge slots 0, 1, 2, and every gluing contributes the inverse metric
g^{kk'}.  :func:`evaluate` contracts the network pairwise following a greedy
plan; :func:`evaluate_bruteforce` sums over colorings literally and exists
only as an oracle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import PlanOverflow, TooLarge
from .frobenius import Algebra, GAction, trivial_action, twisted_constants
from .surface import DualGraph, LabeledSurface, Slot, dual_graph

log = logging.getLogger(__name__)

DEFAULT_SIZE_CAP = 10**8
ORACLE_GUARD = 10**7


def vertex_tensor(triangle: int, surface: LabeledSurface, alg: Algebra, action: GAction) -> np.ndarray:
    g = surface.labels[triangle]
    return np.einsum("ijm,mk->ijk", twisted_constants(g, action, alg), alg.metric)


def edge_propagator(alg: Algebra) -> np.ndarray:
    return alg.inv_metric


@dataclass(frozen=True)
class PlanStep:
    left: int          # cluster ids are the smallest vertex index they contain
    right: int
    edges: tuple[int, ...]
    open_flags: tuple[Slot, ...]
    width: int         # distinct indices touched by the pairwise contraction


@dataclass(frozen=True)
class ContractionPlan:
    traces: tuple[tuple[int, tuple[int, ...]], ...]  # (vertex, self-edge indices)
    steps: tuple[PlanStep, ...]
    num_vertices: int

    @property
    def max_rank(self) -> int:
        ranks = [len(s.open_flags) for s in self.steps]
        return max(ranks, default=0)

    def edges_contracted(self) -> int:
        return sum(len(e) for _, e in self.traces) + sum(len(s.edges) for s in self.steps)

    def cost(self, d: int) -> int:
        """Multiply-add count estimate: sum over steps of d ** width."""
        return sum(d**s.width for s in self.steps)


def plan_contraction(graph: DualGraph) -> ContractionPlan:
    """Greedy plan: always merge the pair of clusters whose result has the
    fewest open indices; ties go to the lexicographically smallest pair of
    cluster ids."""
    owner = graph.flag_owner()
    n = len(graph.vertices)
    open_flags: dict[int, list[Slot]] = {i: list(v.flags) for i, v in enumerate(graph.vertices)}
    edge_between: dict[frozenset, list[int]] = {}
    traces = []
    self_edges: dict[int, list[int]] = {}
    for k, (a, b) in enumerate(graph.edges):
        u, v = owner[a], owner[b]
        if u == v:
            self_edges.setdefault(u, []).append(k)
        else:
            edge_between.setdefault(frozenset((u, v)), []).append(k)
    for u in sorted(self_edges):
        for k in self_edges[u]:
            a, b = graph.edges[k]
            open_flags[u].remove(a)
            open_flags[u].remove(b)
        traces.append((u, tuple(self_edges[u])))

    def shared(ci: int, cj: int) -> list[int]:
        return edge_between.get(frozenset((ci, cj)), [])

    steps = []
    while len(open_flags) > 1:
        ids = sorted(open_flags)
        best = None
        for x, ci in enumerate(ids):
            for cj in ids[x + 1:]:
                s = len(shared(ci, cj))
                cost = len(open_flags[ci]) + len(open_flags[cj]) - 2 * s
                key = (cost, ci, cj)
                if best is None or key < best:
                    best = key
        _, ci, cj = best
        edges = tuple(sorted(shared(ci, cj)))
        dead = {f for k in edges for f in graph.edges[k]}
        merged = [f for f in open_flags[ci] if f not in dead] + [
            f for f in open_flags[cj] if f not in dead
        ]
        width = len(open_flags[ci]) + len(open_flags[cj]) - len(edges)
        steps.append(PlanStep(ci, cj, edges, tuple(merged), width))
        # fold cj into ci
        del open_flags[cj]
        open_flags[ci] = merged
        edge_between.pop(frozenset((ci, cj)), None)
        for key in [k for k in edge_between if cj in k]:
            (other,) = key - {cj}
            edge_between.setdefault(frozenset((ci, other)), []).extend(edge_between.pop(key))
    return ContractionPlan(tuple(traces), tuple(steps), n)


def _trace_pair(tensor: np.ndarray, flags: list[Slot], a: Slot, b: Slot, prop: np.ndarray):
    ia, ib = flags.index(a), flags.index(b)
    letters = "abcdefghijklmnopqrstuvwxyz"
    src = list(letters[: tensor.ndim])
    src[ia], src[ib] = "Y", "Z"
    out = [c for k, c in enumerate(src) if k not in (ia, ib)]
    result = np.einsum(f"{''.join(src)},YZ->{''.join(out)}", tensor, prop)
    rest = [f for f in flags if f not in (a, b)]
    return result, rest


def evaluate(
    surface: LabeledSurface,
    alg: Algebra,
    action: GAction | None = None,
    plan: ContractionPlan | None = None,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> complex:
    """Contract the dual-graph network of ``surface`` and return Z."""
    if surface.num_triangles == 0:
        return 1.0 + 0.0j
    action = action or trivial_action(alg, surface.group)
    graph = dual_graph(surface)
    plan = plan or plan_contraction(graph)
    prop = edge_propagator(alg)
    d = alg.dim

    tensors: dict[int, tuple[np.ndarray, list[Slot]]] = {}
    for t in range(surface.num_triangles):
        tensors[t] = (vertex_tensor(t, surface, alg, action), list(graph.vertices[t].flags))
    for u, edge_ids in plan.traces:
        tensor, flags = tensors[u]
        for k in edge_ids:
            a, b = graph.edges[k]
            tensor, flags = _trace_pair(tensor, flags, a, b, prop)
        tensors[u] = (tensor, flags)

    for step in plan.steps:
        if d ** len(step.open_flags) > size_cap:
            raise PlanOverflow(
                f"intermediate tensor of rank {len(step.open_flags)} exceeds {size_cap} entries"
            )
        ta, fa = tensors.pop(step.left)
        tb, fb = tensors.pop(step.right)
        a_axes, b_axes = [], []
        for k in step.edges:
            x, y = graph.edges[k]
            if x not in fa:
                x, y = y, x
            a_axes.append(fa.index(x))
            b_axes.append(fb.index(y))
        if b_axes:
            # raise the B side of every shared edge: g^{kk'} into B's axis
            tb = np.moveaxis(np.tensordot(tb, prop, axes=([b_axes[0]], [0])), -1, b_axes[0])
            for ax in b_axes[1:]:
                tb = np.moveaxis(np.tensordot(tb, prop, axes=([ax], [0])), -1, ax)
        merged = np.tensordot(ta, tb, axes=(a_axes, b_axes))
        flags = [f for i, f in enumerate(fa) if i not in a_axes] + [
            f for i, f in enumerate(fb) if i not in b_axes
        ]
        assert tuple(flags) == step.open_flags
        tensors[step.left] = (merged, flags)

    ((final, flags),) = tensors.values()
    assert not flags
    return complex(final)


def evaluate_bruteforce(
    surface: LabeledSurface,
    alg: Algebra,
    action: GAction | None = None,
    max_colorings: int = ORACLE_GUARD,
) -> complex:
    """Sum over every assignment of a basis index to every flag of the
    product of all vertex entries and all propagator entries."""
    T = surface.num_triangles
    if T == 0:
        return 1.0 + 0.0j
    d = alg.dim
    nflags = 3 * T
    if d**nflags > max_colorings:
        raise TooLarge(f"{d}^{nflags} colorings exceed the oracle guard {max_colorings}")
    action = action or trivial_action(alg, surface.group)
    prop = edge_propagator(alg)
    index = {(t, e): 3 * t + e for t in range(T) for e in range(3)}
    factors = [(vertex_tensor(t, surface, alg, action), (3 * t, 3 * t + 1, 3 * t + 2)) for t in range(T)]
    factors += [(prop, (index[a], index[b])) for a, b in surface.gluings]

    # fix the colors of the first `fixed` flags in a Python loop, broadcast the rest
    fixed = 0
    while d ** (nflags - fixed) > 1 << 20:
        fixed += 1
    free = nflags - fixed
    total = 0.0 + 0.0j
    for prefix in np.ndindex(*([d] * fixed)):
        acc = np.ones([d] * free, dtype=complex)
        for tensor, axes in factors:
            sel = tuple(prefix[a] if a < fixed else slice(None) for a in axes)
            part = tensor[sel]
            rest = [a - fixed for a in axes if a >= fixed]
            if not rest:
                acc *= part
                continue
            order = np.argsort(rest)
            part = np.transpose(part, order)
            shape = [1] * free
            for a in rest:
                shape[a] = d
            acc *= part.reshape(shape)
        total += acc.sum()
    return complex(total)
