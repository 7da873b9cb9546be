"""
Unit tests for closure computation and ppc children generation.
"""

import pytest
from hypothesis import given, settings

from patternpype.dataset import TransactionDatabase, support_of
from patternpype.lamp import exhaustive_closed_sets
from patternpype.mining import (
    ROOT_CORE,
    SearchNode,
    children,
    closure,
    node_from_wire,
    root_node,
    validate_node,
)
from tests.conftest import databases


@pytest.fixture
def abc_db() -> TransactionDatabase:
    """t1 = {a, b}, t2 = {a, b, c}, t3 = {c}."""
    return TransactionDatabase.from_transactions(
        [[0, 1], [0, 1, 2], [2]], [1, 1, 0], item_names=["a", "b", "c"]
    )


class TestClosure:
    """Test the maximal superset with the same cover."""

    def test_extends_to_co_occurring_items(self, abc_db):
        assert closure(abc_db, [0]) == (0, 1)

    def test_closed_set_is_a_fixpoint(self, abc_db):
        assert closure(abc_db, [2]) == (2,)

    def test_empty_set(self, abc_db):
        assert closure(abc_db, []) == ()

    def test_items_in_every_transaction(self):
        db = TransactionDatabase.from_transactions([[0, 1], [0]], [1, 0])

        assert closure(db, []) == (0,)
        assert root_node(db).itemset == (0,)


class TestChildren:
    """Test prefix-preserving closure extension."""

    def test_root_children(self, abc_db):
        kids = children(abc_db, root_node(abc_db), 1)

        assert [(k.itemset, k.core_index) for k in kids] == [((0, 1), 0), ((2,), 2)]
        assert [k.support for k in kids] == [2, 2]
        assert [k.positive for k in kids] == [2, 1]

    def test_grandchild(self, abc_db):
        ab = children(abc_db, root_node(abc_db), 1)[0]

        kids = children(abc_db, ab, 1)

        assert [k.itemset for k in kids] == [(0, 1, 2)]
        assert kids[0].core_index == 2

    def test_min_support_filters(self, abc_db):
        ab = children(abc_db, root_node(abc_db), 2)[0]

        assert children(abc_db, ab, 2) == []

    def test_extension_restriction(self, abc_db):
        kids = children(abc_db, root_node(abc_db), 1, extensions=[2])

        assert [k.itemset for k in kids] == [(2,)]

    def test_invalid_threshold(self, abc_db):
        with pytest.raises(ValueError, match="min_support"):
            children(abc_db, root_node(abc_db), 0)

    @settings(max_examples=80, deadline=None)
    @given(db=databases(max_items=8, max_transactions=16))
    def test_generated_nodes_are_valid(self, db):
        stack = [root_node(db)]
        while stack:
            node = stack.pop()
            for child in children(db, node, 1):
                validate_node(db, child)
                assert child.core_index in child.itemset
                assert set(node.itemset) < set(child.itemset)
                stack.append(child)


class TestNodes:
    """Test node construction and transfer."""

    def test_root_uses_sentinel_core(self, abc_db):
        root = root_node(abc_db)

        assert root.core_index == ROOT_CORE
        assert root.support == 3
        assert root.positive == 2

    def test_wire_round_trip_rebuilds_counts(self, abc_db):
        node = children(abc_db, root_node(abc_db), 1)[0]

        rebuilt = node_from_wire(abc_db, node.to_wire())

        assert rebuilt == node
        assert rebuilt.cover is not None

    def test_validate_rejects_open_itemset(self, abc_db):
        open_node = SearchNode(itemset=(0,), core_index=0, support=2, positive=2)

        with pytest.raises(ValueError, match="not closed"):
            validate_node(abc_db, open_node)

    def test_validate_rejects_wrong_counts(self, abc_db):
        node = SearchNode(itemset=(0, 1), core_index=0, support=3, positive=2)

        with pytest.raises(ValueError):
            validate_node(abc_db, node)


class TestExhaustiveClosedSets:
    """Test the brute-force enumeration used as an oracle."""

    def test_small_database(self, abc_db):
        closed = exhaustive_closed_sets(abc_db)

        assert [p.items for p in closed] == [("a", "b"), ("a", "b", "c"), ("c",)]
        assert [p.support.total for p in closed] == [2, 1, 2]

    def test_supports_match_popcount(self, abc_db):
        for pattern in exhaustive_closed_sets(abc_db):
            assert pattern.support == support_of(abc_db, pattern.itemset)

    def test_item_limit(self):
        db = TransactionDatabase.from_transactions([[0], [20]], [1, 0])

        with pytest.raises(ValueError, match="limited"):
            exhaustive_closed_sets(db)
