"""
This module provides the labelled transaction database and the support record
of an itemset. The database is stored column-major: one transaction bitset per
item plus one bitset marking the positive transactions, which is all the
mining core and the statistics need.
"""

from collections.abc import Sequence
from typing import Self

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from patternpype.dataset import bitset
from patternpype.exceptions import DatasetError


class PatternSupport(BaseModel):
    """
    Frequency of an itemset in all transactions and in positive ones.

    Attributes:
        total (int): x(I), number of transactions containing the itemset
        positive (int): n(I), number of positive transactions containing it
    """

    model_config = ConfigDict(frozen=True)

    total: int = Field(ge=0)
    positive: int = Field(ge=0)

    @model_validator(mode="after")
    def validate_support(self) -> Self:
        if self.positive > self.total:
            raise ValueError("Positive support cannot exceed total support")
        return self


class TransactionDatabase(BaseModel):
    """
    Labelled binary transaction matrix indexed by item.

    Immutable once built; every worker of a parallel run reads the same
    instance.

    Attributes:
        num_items (int): Count of distinct items (columns)
        num_transactions (int): N, count of transactions (rows)
        num_positive (int): N_pos, count of positively labelled transactions
        item_bitsets (ndarray): ``(num_items, words)`` uint64; bit t of row i is
            set iff transaction t contains item i
        positive_bitset (ndarray): ``(words,)`` uint64; bit t set iff
            transaction t is positive
        item_names (tuple[str, ...]): Display token per item id
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    num_items: int = Field(ge=0)
    num_transactions: int = Field(gt=0)
    num_positive: int = Field(gt=0)
    item_bitsets: npt.NDArray[np.uint64]
    positive_bitset: npt.NDArray[np.uint64]
    item_names: tuple[str, ...]

    @model_validator(mode="after")
    def validate_database(self) -> Self:
        if not 0 < self.num_positive < self.num_transactions:
            raise ValueError("Both classes must be non-empty (single-class labels)")

        words = bitset.word_count(self.num_transactions)
        if self.item_bitsets.shape != (self.num_items, words):
            raise ValueError(
                f"Item bitsets must have shape ({self.num_items}, {words}), "
                f"got {self.item_bitsets.shape}"
            )
        if self.positive_bitset.shape != (words,):
            raise ValueError(f"Positive bitset must have {words} words")

        tail = bitset.full(self.num_transactions)
        if np.any(self.item_bitsets & ~tail) or np.any(self.positive_bitset & ~tail):
            raise ValueError("Bits beyond the last transaction must be zero")
        if bitset.popcount(self.positive_bitset) != self.num_positive:
            raise ValueError("num_positive does not match the positive bitset")

        if len(self.item_names) != self.num_items:
            raise ValueError("Exactly one name per item is required")
        if any(not name for name in self.item_names):
            raise ValueError("Item names must be non-empty")
        if len(set(self.item_names)) != self.num_items:
            raise ValueError("Item names must be unique")

        self.item_bitsets.setflags(write=False)
        self.positive_bitset.setflags(write=False)
        return self

    @classmethod
    def from_transactions(
        cls,
        transactions: Sequence[Sequence[int]],
        labels: Sequence[int | bool],
        item_names: Sequence[str] | None = None,
        num_items: int | None = None,
    ) -> "TransactionDatabase":
        """
        Build a database from item-id rows and 0/1 labels.

        Args:
            transactions: One sequence of item ids per transaction; duplicates
                inside a row are ignored
            labels: One label per transaction, truthy for positive
            item_names: Optional display names; defaults to the item ids
            num_items: Number of items; defaults to ``max id + 1``

        Raises:
            DatasetError: On count mismatches, empty input or single-class labels
        """
        if len(labels) != len(transactions):
            raise DatasetError(
                f"label/transaction count mismatch: {len(labels)} labels for "
                f"{len(transactions)} transactions"
            )
        if not transactions:
            raise DatasetError("empty database")

        if num_items is None:
            num_items = 1 + max((max(row) for row in transactions if row), default=-1)
        if item_names is None:
            item_names = [str(i) for i in range(num_items)]

        n = len(transactions)
        matrix = np.zeros((num_items, n), dtype=bool)
        for t, row in enumerate(transactions):
            for item in row:
                if not 0 <= item < num_items:
                    raise DatasetError(f"item id {item} out of range in row {t}")
                matrix[item, t] = True

        positive = np.array([bool(label) for label in labels], dtype=bool)
        num_positive = int(positive.sum())
        if num_positive in (0, n):
            raise DatasetError("single-class labels")

        return cls(
            num_items=num_items,
            num_transactions=n,
            num_positive=num_positive,
            item_bitsets=bitset.pack_rows(matrix, n),
            positive_bitset=bitset.pack_rows(positive[None, :], n)[0],
            item_names=tuple(item_names),
        )

    @property
    def num_negative(self) -> int:
        return self.num_transactions - self.num_positive

    @property
    def full_cover(self) -> bitset.Bitset:
        """Cover of the empty itemset: every transaction."""
        return bitset.full(self.num_transactions)

    def transactions(self) -> list[frozenset[int]]:
        """Row view of the database, one item-id set per transaction."""
        rows: list[set[int]] = [set() for _ in range(self.num_transactions)]
        for item in range(self.num_items):
            for t in bitset.to_indices(self.item_bitsets[item]):
                rows[t].add(item)
        return [frozenset(row) for row in rows]

    def names_of(self, itemset: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.item_names[i] for i in itemset)
