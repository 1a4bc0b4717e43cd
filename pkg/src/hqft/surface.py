"""Closed oriented triangulated surfaces with a group label on each triangle.

A triangle ``t`` has corners 0, 1, 2 in the order given by its boundary
orientation; edge slot ``e`` is the directed edge from corner ``e`` to corner
``e + 1 (mod 3)``.  A gluing identifies two slots head-to-tail, so that
corner ``e`` of the first slot meets corner ``e' + 1`` of the second and vice
versa.  Every gluing of this kind is orientation compatible, which is why
orientability needs no global search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    BadVertex,
    Disconnected,
    DuplicateSlot,
    MultiSharedEdge,
    NonOrientableGluing,
    NotAdjacent,
    OddChi,
    OpenSlot,
    SelfGluing,
)
from .group import TRIVIAL_GROUP, FiniteAbelianGroup, GroupElement

Slot = tuple[int, int]
Corner = tuple[int, int]
Gluing = tuple[Slot, Slot]


class UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller representative wins, which keeps class ids deterministic
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return [sorted(v) for _, v in sorted(groups.items())]


@dataclass(frozen=True, eq=False)
class LabeledSurface:
    group: FiniteAbelianGroup
    labels: tuple[GroupElement, ...]
    gluings: tuple[Gluing, ...]

    @property
    def num_triangles(self) -> int:
        return len(self.labels)

    @cached_property
    def partner(self) -> dict[Slot, Slot]:
        p = {}
        for a, b in self.gluings:
            p[a] = b
            p[b] = a
        return p

    @cached_property
    def corner_classes(self) -> list[list[Corner]]:
        """Vertices of the triangulation as classes of triangle corners."""
        uf = UnionFind((t, c) for t in range(self.num_triangles) for c in range(3))
        for (t, e), (s, f) in self.gluings:
            uf.union((t, e), (s, (f + 1) % 3))
            uf.union((t, (e + 1) % 3), (s, f))
        return uf.classes()

    @cached_property
    def components(self) -> list[list[int]]:
        """Triangle indices of each connected component, ordered by smallest index."""
        uf = UnionFind(range(self.num_triangles))
        for (t, _), (s, _) in self.gluings:
            uf.union(t, s)
        return uf.classes()

    def vertex_of(self, corner: Corner) -> int:
        for i, cls in enumerate(self.corner_classes):
            if corner in cls:
                return i
        raise KeyError(corner)

    def __eq__(self, other):
        if not isinstance(other, LabeledSurface):
            return NotImplemented
        return (
            self.group == other.group
            and self.labels == other.labels
            and _canonical_gluings(self.gluings) == _canonical_gluings(other.gluings)
        )

    def __hash__(self):
        return hash((self.group, self.labels, _canonical_gluings(self.gluings)))

    def __repr__(self):
        return (
            f"LabeledSurface(T={self.num_triangles}, chi={euler_characteristic(self)}, "
            f"group={self.group})"
        )


def _canonical_gluings(gluings) -> frozenset:
    return frozenset(frozenset((a, b)) for a, b in gluings)


def make_surface(
    num_triangles: int,
    labels: Sequence | None = None,
    gluings: Iterable = (),
    group: FiniteAbelianGroup = TRIVIAL_GROUP,
) -> LabeledSurface:
    """Validate and build a surface.

    ``gluings`` holds pairs ``((t, e), (t2, e2))``.  An optional third entry
    ``"preserve"`` (or ``True``) requests a direction-preserving
    identification, which is never orientable and is rejected.
    ``labels`` may hold GroupElements or residue lists; missing or ``None``
    labels mean the identity.
    """
    T = int(num_triangles)
    if T < 0:
        raise OpenSlot(f"negative triangle count {T}")
    labels = list(labels or [])
    if len(labels) > T:
        raise DuplicateSlot(f"{len(labels)} labels for {T} triangles")
    labels += [None] * (T - len(labels))
    elems = []
    for lab in labels:
        if lab is None:
            elems.append(group.identity())
        elif isinstance(lab, GroupElement):
            elems.append(group.op(group.identity(), lab))
        else:
            elems.append(group.element(lab))

    seen: dict[Slot, int] = {}
    clean: list[Gluing] = []
    for n, g in enumerate(gluings):
        g = list(g)
        if len(g) not in (2, 3):
            raise DuplicateSlot(f"gluing {n} must have two slots")
        a, b = (_slot(s, T, n) for s in g[:2])
        if len(g) == 3 and g[2] in (True, "preserve"):
            raise NonOrientableGluing(
                f"gluing {n} {a}~{b} identifies the edges preserving direction"
            )
        if a == b:
            raise DuplicateSlot(f"gluing {n} glues slot {a} to itself")
        for s in (a, b):
            if s in seen:
                raise DuplicateSlot(f"slot {s} appears in gluings {seen[s]} and {n}")
            seen[s] = n
        clean.append((a, b))
    for t in range(T):
        for e in range(3):
            if (t, e) not in seen:
                raise OpenSlot(f"slot {(t, e)} is not glued")
    return LabeledSurface(group, tuple(elems), tuple(clean))


def _slot(s, T: int, n: int) -> Slot:
    t, e = (int(x) for x in s)
    if not (0 <= t < T and 0 <= e < 3):
        raise OpenSlot(f"gluing {n} refers to nonexistent slot {(t, e)}")
    return (t, e)


# Dual graph


@dataclass(frozen=True)
class DualVertex:
    label: GroupElement | None
    flags: tuple[Slot, ...]


@dataclass(frozen=True)
class DualGraph:
    """Vertices carry their flags in cyclic order; edges join two flags."""

    vertices: tuple[DualVertex, ...]
    edges: tuple[tuple[Slot, Slot], ...]

    @property
    def num_flags(self) -> int:
        return sum(len(v.flags) for v in self.vertices)

    def flag_owner(self) -> dict[Slot, int]:
        return {f: i for i, v in enumerate(self.vertices) for f in v.flags}


def dual_graph(surface: LabeledSurface) -> DualGraph:
    vertices = tuple(
        DualVertex(label, ((t, 0), (t, 1), (t, 2))) for t, label in enumerate(surface.labels)
    )
    return DualGraph(vertices, tuple(surface.gluings))


def graph_from_edges(num_vertices: int, edges: Iterable[tuple[int, int]]) -> DualGraph:
    """Unlabeled dual-style graph from vertex pairs; flags are numbered per vertex."""
    counts = [0] * num_vertices
    flag_edges = []
    for u, v in edges:
        fu = (u, counts[u])
        counts[u] += 1
        fv = (v, counts[v])
        counts[v] += 1
        flag_edges.append((fu, fv))
    vertices = tuple(
        DualVertex(None, tuple((i, k) for k in range(counts[i]))) for i in range(num_vertices)
    )
    return DualGraph(vertices, tuple(flag_edges))


# Topology


def euler_characteristic(surface: LabeledSurface) -> int:
    T = surface.num_triangles
    return len(surface.corner_classes) - (3 * T) // 2 + T


def genus(surface: LabeledSurface) -> int:
    if len(surface.components) != 1:
        raise Disconnected(f"surface has {len(surface.components)} components")
    chi = euler_characteristic(surface)
    if chi % 2:
        raise OddChi(f"odd Euler characteristic {chi} on a closed orientable surface")
    return (2 - chi) // 2


def total_class(surface: LabeledSurface) -> list[GroupElement]:
    """Sum of the triangle labels in each connected component."""
    return [surface.group.sum(surface.labels[t] for t in comp) for comp in surface.components]


# Moves


def _replace(surface: LabeledSurface, labels, gluings) -> LabeledSurface:
    return LabeledSurface(surface.group, tuple(labels), tuple(gluings))


def _remap(gluing: Gluing, slot_map: dict[Slot, Slot]) -> Gluing:
    a, b = gluing
    return (slot_map.get(a, a), slot_map.get(b, b))


def homotopy_shift(surface: LabeledSurface, source: int, target: int) -> LabeledSurface:
    """Move the label of ``source`` onto the adjacent triangle ``target``."""
    T = surface.num_triangles
    if not (0 <= source < T and 0 <= target < T) or source == target:
        raise NotAdjacent(f"triangles {source} and {target} are not two distinct triangles")
    if not any({a[0], b[0]} == {source, target} for a, b in surface.gluings):
        raise NotAdjacent(f"triangles {source} and {target} share no edge")
    labels = list(surface.labels)
    labels[target] = labels[source] + labels[target]
    labels[source] = surface.group.identity()
    return _replace(surface, labels, surface.gluings)


def pachner_22(surface: LabeledSurface, gluing_index: int) -> LabeledSurface:
    """Flip the edge of ``gluings[gluing_index]`` to the other diagonal.

    With slots ``(t, e)`` and ``(s, f)`` the two triangles are (a, b, c) and
    (b, a, d); they become (a, d, c) at index ``t`` and (d, b, c) at index
    ``s``.  Both labels go to index ``t``.
    """
    (t, e), (s, f) = surface.gluings[gluing_index]
    if t == s:
        raise SelfGluing(f"gluing {gluing_index} joins triangle {t} to itself")
    shared = sum(1 for a, b in surface.gluings if {a[0], b[0]} == {t, s})
    if shared > 1:
        raise MultiSharedEdge(f"triangles {t} and {s} share {shared} edges")
    slot_map = {
        (s, (f + 1) % 3): (t, 0),
        (t, (e + 2) % 3): (t, 2),
        (s, (f + 2) % 3): (s, 0),
        (t, (e + 1) % 3): (s, 1),
    }
    gluings = [
        ((t, 1), (s, 2)) if n == gluing_index else _remap(g, slot_map)
        for n, g in enumerate(surface.gluings)
    ]
    labels = list(surface.labels)
    labels[t] = labels[t] + labels[s]
    labels[s] = surface.group.identity()
    return _replace(surface, labels, gluings)


def pachner_13(surface: LabeledSurface, triangle: int) -> LabeledSurface:
    """Star a triangle (a, b, c) into (a, b, v), (b, c, v), (c, a, v).

    The first child keeps index ``triangle`` and the label; the others are
    appended.
    """
    T = surface.num_triangles
    t = triangle
    if not 0 <= t < T:
        raise IndexError(f"no triangle {t}")
    t1, t2 = T, T + 1
    slot_map = {(t, 1): (t1, 0), (t, 2): (t2, 0)}
    gluings = [_remap(g, slot_map) for g in surface.gluings]
    gluings += [((t, 1), (t1, 2)), ((t1, 1), (t2, 2)), ((t2, 1), (t, 2))]
    identity = surface.group.identity()
    return _replace(surface, list(surface.labels) + [identity, identity], gluings)


def pachner_31(surface: LabeledSurface, corner: Corner) -> LabeledSurface:
    """Merge the three triangles around the degree-3 vertex containing ``corner``.

    The merged triangle takes the smallest of the three indices; the other
    two are removed and later triangles renumbered.
    """
    cls = next((c for c in surface.corner_classes if tuple(corner) in c), None)
    if cls is None:
        raise BadVertex(f"no corner {tuple(corner)}")
    tris = [t for t, _ in cls]
    if len(cls) != 3 or len(set(tris)) != 3:
        raise BadVertex(
            f"vertex of corner {tuple(corner)} has degree {len(cls)} over triangles {tris}"
        )
    at = dict(cls)
    a = min(tris)
    p = surface.partner
    # around the vertex v: A=(x, y, v) and each "y -> v" slot meets the next "v -> x" slot
    ring = [a]
    for _ in range(2):
        cur = ring[-1]
        nxt = p[(cur, (at[cur] + 2) % 3)]
        if nxt[0] not in at or nxt[0] in ring or nxt[1] != at[nxt[0]]:
            raise BadVertex(f"triangles {tris} do not form a disk around the vertex")
        ring.append(nxt[0])
    b, c = ring[1], ring[2]
    if p[(c, (at[c] + 2) % 3)] != (a, at[a]):
        raise BadVertex(f"triangles {tris} do not form a disk around the vertex")

    internal = {(x, at[x]) for x in ring} | {(x, (at[x] + 2) % 3) for x in ring}
    slot_map = {(x, (at[x] + 1) % 3): (a, k) for k, x in enumerate(ring)}
    removed = sorted((b, c))
    renumber = {}
    for t in range(surface.num_triangles):
        if t not in removed:
            renumber[t] = t - sum(1 for r in removed if r < t)

    def fix(slot):
        t, e = slot_map.get(slot, slot)
        return (renumber[t], e)

    gluings = [
        (fix(x), fix(y)) for x, y in surface.gluings if x not in internal and y not in internal
    ]
    labels = list(surface.labels)
    labels[a] = labels[a] + labels[b] + labels[c]
    labels = [lab for t, lab in enumerate(labels) if t not in removed]
    return _replace(surface, labels, gluings)


def degree3_corners(surface: LabeledSurface) -> list[Corner]:
    """One representative corner of each vertex where ``pachner_31`` applies."""
    out = []
    for cls in surface.corner_classes:
        if len(cls) == 3 and len({t for t, _ in cls}) == 3:
            try:
                pachner_31(surface, cls[0])
            except BadVertex:
                continue
            out.append(cls[0])
    return out


def flippable_gluings(surface: LabeledSurface) -> list[int]:
    """Indices of gluings where ``pachner_22`` applies."""
    counts: dict[frozenset, int] = {}
    for a, b in surface.gluings:
        key = frozenset((a[0], b[0]))
        counts[key] = counts.get(key, 0) + 1
    return [
        n
        for n, (a, b) in enumerate(surface.gluings)
        if a[0] != b[0] and counts[frozenset((a[0], b[0]))] == 1
    ]


# Builders


def polygon_surface(word: str, group: FiniteAbelianGroup = TRIVIAL_GROUP, labels=None) -> LabeledSurface:
    """Fan-triangulate a polygon whose sides follow an edge word.

    Letters name sides; a lowercase letter and its uppercase partner are
    identified with opposite directions, e.g. ``"abAB"`` is the torus.
    """
    sides = [ch for ch in word if not ch.isspace()]
    n = len(sides)
    if n < 3:
        raise ValueError("polygon needs at least three sides")
    T = n - 2
    # triangle i = (p0, p_{i+1}, p_{i+2})
    side_slot: dict[int, Slot] = {0: (0, 0), n - 1: (T - 1, 2)}
    for i in range(T):
        side_slot[i + 1] = (i, 1)
    gluings = [((i, 2), (i + 1, 0)) for i in range(T - 1)]
    pos: dict[str, int] = {}
    for k, ch in enumerate(sides):
        pos.setdefault(ch, k)
    for ch, k in pos.items():
        if ch.islower():
            other = pos.get(ch.upper())
            if other is None:
                raise ValueError(f"side {ch!r} has no partner {ch.upper()!r}")
            gluings.append((side_slot[k], side_slot[other]))
    return make_surface(T, labels, gluings, group)


def genus_surface(h: int, group: FiniteAbelianGroup = TRIVIAL_GROUP, total=None) -> LabeledSurface:
    """A connected genus-``h`` surface with ``total`` placed on triangle 0."""
    if h < 0:
        raise ValueError(f"negative genus {h}")
    if h == 0:
        word = "abBA"
    else:
        word = "".join(f"{x}{y}{x.upper()}{y.upper()}" for x, y in zip("acegikmoqsuw", "bdfhjlnprtvx"[:h]))
    labels = [total] if total is not None else None
    return polygon_surface(word, group, labels)


def sphere(group: FiniteAbelianGroup = TRIVIAL_GROUP, labels=None) -> LabeledSurface:
    return polygon_surface("abBA", group, labels)


def torus(group: FiniteAbelianGroup = TRIVIAL_GROUP, labels=None) -> LabeledSurface:
    return polygon_surface("abAB", group, labels)


def tetrahedron(group: FiniteAbelianGroup = TRIVIAL_GROUP, labels=None) -> LabeledSurface:
    """Boundary of a tetrahedron, faces oriented outward."""
    faces = [(0, 2, 1), (0, 1, 3), (1, 2, 3), (0, 3, 2)]
    return from_faces(faces, group, labels)


def from_faces(faces, group: FiniteAbelianGroup = TRIVIAL_GROUP, labels=None) -> LabeledSurface:
    """Build from consistently oriented vertex triples (a simplicial surface)."""
    where: dict[tuple[int, int], Slot] = {}
    for t, face in enumerate(faces):
        for e in range(3):
            where[(face[e], face[(e + 1) % 3])] = (t, e)
    gluings = []
    for (u, v), slot in where.items():
        if (u, v) < (v, u):
            if (v, u) not in where:
                raise OpenSlot(f"edge {(u, v)} has no oppositely oriented partner")
            gluings.append((slot, where[(v, u)]))
    return make_surface(len(faces), labels, gluings, group)


def disjoint_union(*surfaces: LabeledSurface) -> LabeledSurface:
    if not surfaces:
        return make_surface(0)
    group = surfaces[0].group
    labels, gluings, offset = [], [], 0
    for s in surfaces:
        labels.extend(s.labels)
        gluings.extend(((a + offset, e), (b + offset, f)) for (a, e), (b, f) in s.gluings)
        offset += s.num_triangles
    return make_surface(offset, labels, gluings, group)


def with_labels(surface: LabeledSurface, labels) -> LabeledSurface:
    return make_surface(surface.num_triangles, labels, surface.gluings, surface.group)
