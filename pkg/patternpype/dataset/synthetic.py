"""
Seeded synthetic databases for benchmarks, fuzzing and tests.
"""

import numpy as np

from patternpype.dataset import bitset
from patternpype.dataset.models import TransactionDatabase


def _build(matrix: np.ndarray, positive: np.ndarray, prefix: str) -> TransactionDatabase:
    num_items, n = matrix.shape
    # Both classes must be present whatever the random draw did.
    if not positive.any():
        positive[0] = True
    if positive.all():
        positive[-1] = False
    return TransactionDatabase(
        num_items=num_items,
        num_transactions=n,
        num_positive=int(positive.sum()),
        item_bitsets=bitset.pack_rows(matrix, n),
        positive_bitset=bitset.pack_rows(positive[None, :], n)[0],
        item_names=tuple(f"{prefix}{i}" for i in range(num_items)),
    )


def generate_database(
    num_items: int,
    num_transactions: int,
    density: float = 0.3,
    positive_fraction: float = 0.5,
    planted_size: int = 0,
    planted_strength: float = 0.9,
    seed: int = 0,
) -> TransactionDatabase:
    """
    Bernoulli noise with an optional class-correlated planted pattern.

    Args:
        num_items: Number of items
        num_transactions: Number of transactions
        density: Probability that a transaction contains a noise item
        positive_fraction: Expected share of positive transactions
        planted_size: Size of the planted itemset (items ``0 .. size-1``);
            0 disables planting
        planted_strength: Probability that a positive transaction contains the
            whole planted itemset
        seed: Generator seed
    """
    if not 0 <= planted_size <= num_items:
        raise ValueError("planted_size must be within [0, num_items]")
    rng = np.random.default_rng(seed)
    positive = rng.random(num_transactions) < positive_fraction
    matrix = rng.random((num_items, num_transactions)) < density
    if planted_size:
        carriers = positive & (rng.random(num_transactions) < planted_strength)
        matrix[:planted_size, carriers] = True
    return _build(matrix, positive, prefix="i")


def generate_skewed_database(
    num_items: int = 40,
    num_transactions: int = 120,
    dense_items: int = 18,
    dense_rows: int = 40,
    dense_density: float = 0.75,
    sparse_density: float = 0.08,
    seed: int = 0,
) -> TransactionDatabase:
    """
    A workload whose search tree is dominated by the subtree of item 0.

    Item 0 occurs in every transaction of a dense block, and the dense items
    ``1 .. dense_items`` occur only inside that block, so the closure of any
    dense itemset contains item 0 and its node sits below the depth-1 node of
    item 0. The remaining items are sparse noise spread over the other rows.
    Worker 0 owns item 0 under the mod-P partition, which makes the naive
    split maximally unbalanced.
    """
    if dense_items + 1 > num_items or dense_rows > num_transactions:
        raise ValueError("dense block does not fit in the database")
    rng = np.random.default_rng(seed)
    matrix = np.zeros((num_items, num_transactions), dtype=bool)
    matrix[0, :dense_rows] = True
    matrix[1 : dense_items + 1, :dense_rows] = (
        rng.random((dense_items, dense_rows)) < dense_density
    )
    matrix[dense_items + 1 :, dense_rows:] = (
        rng.random((num_items - dense_items - 1, num_transactions - dense_rows))
        < sparse_density
    )
    positive = rng.random(num_transactions) < 0.5
    return _build(matrix, positive, prefix="s")
