from dataclasses import dataclass, field

import numpy as np

from patternpype.dataset import bitset
from patternpype.dataset.loader import cover_of
from patternpype.dataset.models import TransactionDatabase

ROOT_CORE = -1

WireNode = tuple[tuple[int, ...], int]


@dataclass(frozen=True, slots=True)
class SearchNode:
    """
    One unit of search work: a closed itemset plus its extension state.

    The itemset and the core index are all another worker needs to resume the
    search below this node; the cached cover and counts are rebuilt on arrival.

    Attributes:
        itemset (tuple[int, ...]): Sorted item ids of the closed itemset
        core_index (int): Item the node was generated by, ROOT_CORE for the root
        support (int): x(I), transactions containing the itemset
        positive (int): n(I), positive transactions containing the itemset
        cover (ndarray | None): Cached transaction bitset of the itemset
    """

    itemset: tuple[int, ...]
    core_index: int
    support: int
    positive: int
    cover: bitset.Bitset | None = field(default=None, compare=False, repr=False)

    def to_wire(self) -> WireNode:
        return (self.itemset, self.core_index)

    def cover_in(self, db: TransactionDatabase) -> bitset.Bitset:
        if self.cover is not None:
            return self.cover
        return cover_of(db, self.itemset)


def node_from_wire(db: TransactionDatabase, wire: WireNode) -> SearchNode:
    """Rebuild a node received in a work transfer."""
    itemset, core_index = wire
    cover = cover_of(db, itemset)
    return SearchNode(
        itemset=tuple(itemset),
        core_index=core_index,
        support=bitset.popcount(cover),
        positive=bitset.popcount(cover & db.positive_bitset),
        cover=cover,
    )


def root_node(db: TransactionDatabase) -> SearchNode:
    """Closure of the empty itemset: the items present in every transaction."""
    cover = db.full_cover
    closed = np.flatnonzero(bitset.superset_rows(db.item_bitsets, cover))
    return SearchNode(
        itemset=tuple(int(i) for i in closed),
        core_index=ROOT_CORE,
        support=db.num_transactions,
        positive=db.num_positive,
        cover=cover,
    )
