from itertools import combinations

import pytest

from patternpype.dataset import TransactionDatabase, generate_database


@pytest.fixture
def lattice_db() -> TransactionDatabase:
    """Every 2- and 3-subset of five items: each singleton and pair is closed."""
    rows = [list(c) for size in (2, 3) for c in combinations(range(5), size)]
    labels = [i % 2 for i in range(len(rows))]
    return TransactionDatabase.from_transactions(rows, labels)


@pytest.fixture
def busy_db() -> TransactionDatabase:
    """Large enough that stealing always happens with four workers."""
    return generate_database(12, 60, density=0.4, planted_size=3, seed=1)
