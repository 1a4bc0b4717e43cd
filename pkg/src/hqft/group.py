"""Finite abelian groups as products of cyclic groups, written additively."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GroupMismatch, NonPositiveOrder


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/n_1 x ... x Z/n_k.  ``orders == ()`` is the trivial group."""

    orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        for n in self.orders:
            if n < 1:
                raise NonPositiveOrder(f"cyclic factor order {n} < 1")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def __len__(self):
        return self.order

    def element(self, residues: Iterable[int]) -> GroupElement:
        residues = tuple(int(r) for r in residues)
        if len(residues) != self.rank:
            raise GroupMismatch(
                f"element {list(residues)} has {len(residues)} residues, "
                f"group {list(self.orders)} has {self.rank} factors"
            )
        return GroupElement(self, tuple(r % n for r, n in zip(residues, self.orders)))

    def identity(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def generators(self) -> list[GroupElement]:
        """The standard generators, one per cyclic factor."""
        gens = []
        for i in range(self.rank):
            r = [0] * self.rank
            r[i] = 1
            gens.append(self.element(r))
        return gens

    def _check(self, g: GroupElement):
        if g.group != self:
            raise GroupMismatch(
                f"element of {list(g.group.orders)} used in group {list(self.orders)}"
            )

    def op(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._check(g)
        self._check(h)
        return GroupElement(
            self,
            tuple((a + b) % n for a, b, n in zip(g.residues, h.residues, self.orders)),
        )

    def inv(self, g: GroupElement) -> GroupElement:
        self._check(g)
        return GroupElement(self, tuple((-a) % n for a, n in zip(g.residues, self.orders)))

    def sum(self, elements: Iterable[GroupElement]) -> GroupElement:
        total = self.identity()
        for g in elements:
            total = self.op(total, g)
        return total

    def enumerate(self) -> list[GroupElement]:
        """All elements, lexicographic in the residue vectors."""
        return [
            GroupElement(self, r)
            for r in itertools.product(*(range(n) for n in self.orders))
        ]

    def __iter__(self):
        return iter(self.enumerate())

    def __str__(self):
        if not self.orders:
            return "0"
        return " x ".join(f"Z/{n}" for n in self.orders)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianGroup
    residues: tuple[int, ...]

    def __add__(self, other: GroupElement) -> GroupElement:
        return self.group.op(self, other)

    def __neg__(self) -> GroupElement:
        return self.group.inv(self)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self.group.op(self, self.group.inv(other))

    def is_identity(self) -> bool:
        return not any(self.residues)

    def to_list(self) -> list[int]:
        return list(self.residues)

    def __repr__(self):
        return f"GroupElement({list(self.residues)})"


def make_group(orders: Sequence[int]) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(tuple(orders))


TRIVIAL_GROUP = FiniteAbelianGroup(())
