import pytest
from hypothesis import given, strategies as st

from hqft.errors import GroupMismatch, NonPositiveOrder
from hqft.group import TRIVIAL_GROUP, FiniteAbelianGroup, make_group

orders_st = st.lists(st.integers(1, 6), min_size=0, max_size=3)


def test_make_group_examples():
    assert str(make_group([2])) == "Z/2"
    assert make_group([2, 3]).order == 6
    assert make_group([]).order == 1
    assert TRIVIAL_GROUP.enumerate() == [TRIVIAL_GROUP.identity()]


@pytest.mark.parametrize("orders", [[0], [-3], [2, 0]])
def test_nonpositive_order(orders):
    with pytest.raises(NonPositiveOrder):
        make_group(orders)


def test_element_reduction_and_mismatch():
    G = make_group([4, 3])
    assert G.element([5, -1]).residues == (1, 2)
    with pytest.raises(GroupMismatch):
        G.element([1])
    with pytest.raises(GroupMismatch):
        G.op(G.identity(), make_group([4]).identity())


def test_enumerate_lexicographic():
    G = make_group([2, 3])
    assert [g.to_list() for g in G.enumerate()] == [
        [0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]
    ]


def test_z4_generator_order():
    G = make_group([4])
    (x,) = G.generators()
    acc = G.identity()
    seen = []
    for _ in range(4):
        acc = acc + x
        seen.append(acc.is_identity())
    assert seen == [False, False, False, True]


@given(orders_st, st.data())
def test_group_laws(orders, data):
    G = FiniteAbelianGroup(tuple(orders))
    pick = lambda: G.element([data.draw(st.integers(0, n - 1)) for n in orders])
    a, b, c = pick(), pick(), pick()
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + G.identity() == a
    assert (a + G.inv(a)).is_identity()
    assert a - b == a + (-b)
    assert len(G.enumerate()) == G.order
