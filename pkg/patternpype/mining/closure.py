"""
Closure computation and prefix-preserving closure (ppc) extension.

For a closed itemset I generated by core item c, each item e > c not in I is
tried: J = closure(I + {e}) becomes a child with core e when it is frequent
and contains no item smaller than e outside I. Over the whole tree every
closed itemset is produced exactly once.
"""

from collections.abc import Iterable, Sequence

import numpy as np

from patternpype.dataset import bitset
from patternpype.dataset.loader import cover_of
from patternpype.dataset.models import TransactionDatabase
from patternpype.mining.node import SearchNode


def closure_of_cover(db: TransactionDatabase, cover: bitset.Bitset) -> tuple[int, ...]:
    """Items whose transaction bitset contains ``cover``."""
    mask = bitset.superset_rows(db.item_bitsets, cover)
    return tuple(int(i) for i in np.flatnonzero(mask))


def closure(db: TransactionDatabase, itemset: Sequence[int]) -> tuple[int, ...]:
    """The unique maximal superset of ``itemset`` with the same cover."""
    return closure_of_cover(db, cover_of(db, tuple(itemset)))


def children(
    db: TransactionDatabase,
    node: SearchNode,
    min_support: int,
    extensions: Iterable[int] | None = None,
) -> list[SearchNode]:
    """
    ppc children of ``node`` with support >= ``min_support``, ascending by core.

    Args:
        db: Database
        node: Parent closed itemset
        min_support: Support threshold (>= 1)
        extensions: Optional restriction of the candidate extension items
    """
    if min_support < 1:
        raise ValueError(f"min_support must be >= 1, got {min_support}")

    in_parent = np.zeros(db.num_items, dtype=bool)
    in_parent[np.asarray(node.itemset, dtype=np.intp)] = True

    if extensions is None:
        candidates = np.arange(node.core_index + 1, db.num_items)
    else:
        candidates = np.array(
            sorted(e for e in extensions if node.core_index < e < db.num_items),
            dtype=np.int64,
        )
    candidates = candidates[~in_parent[candidates]]
    if candidates.size == 0:
        return []

    parent_cover = node.cover_in(db)
    covers = db.item_bitsets[candidates] & parent_cover
    supports = bitset.popcount_rows(covers)
    frequent = supports >= min_support

    result: list[SearchNode] = []
    for e, cover, support in zip(
        candidates[frequent], covers[frequent], supports[frequent], strict=True
    ):
        mask = bitset.superset_rows(db.item_bitsets, cover)
        # Prefix preservation: nothing below e may join except parent items.
        if np.any(mask[:e] & ~in_parent[:e]):
            continue
        result.append(
            SearchNode(
                itemset=tuple(int(i) for i in np.flatnonzero(mask)),
                core_index=int(e),
                support=int(support),
                positive=bitset.popcount(cover & db.positive_bitset),
                cover=cover,
            )
        )
    return result


def validate_node(db: TransactionDatabase, node: SearchNode) -> None:
    """
    Check that a node is consistent with the database.

    Raises:
        ValueError: If the itemset is not closed, the core is not a member or
            the cached counts disagree with the cover
    """
    if closure(db, node.itemset) != node.itemset:
        raise ValueError(f"Itemset {node.itemset} is not closed")
    if node.core_index >= 0 and node.core_index not in node.itemset:
        raise ValueError(f"Core {node.core_index} not in itemset {node.itemset}")
    cover = cover_of(db, node.itemset)
    if bitset.popcount(cover) != node.support:
        raise ValueError(f"Support of {node.itemset} is stale")
    if bitset.popcount(cover & db.positive_bitset) != node.positive:
        raise ValueError(f"Positive support of {node.itemset} is stale")
