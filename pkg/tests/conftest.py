"""
Shared fixtures and hypothesis strategies for the patternpype test-suite.
"""

import pytest
from hypothesis import strategies as st

from patternpype.dataset import TransactionDatabase
from patternpype.runtime import (
    RuntimeConfiguration,
    SimulatorConfiguration,
    TransportFactory,
    TransportKind,
    TransportsInitializer,
)


@pytest.fixture(scope="session", autouse=True)
def setup_transports():
    """Register the built-in transports once for the whole session."""
    TransportFactory.clear()
    TransportsInitializer.configure()


@pytest.fixture
def three_row_db() -> TransactionDatabase:
    """{a}, {b}, {a, b}: three closed sets at support 1."""
    return TransactionDatabase.from_transactions(
        [[0], [1], [0, 1]], [1, 0, 1], item_names=["a", "b"]
    )


@pytest.fixture
def correlated_db() -> TransactionDatabase:
    """Item ``x`` occurs in exactly the five positive rows; ``y`` is noise."""
    rows = [[0, 1], [0], [0], [0], [0], [1], [1], [], [], []]
    labels = [1] * 5 + [0] * 5
    return TransactionDatabase.from_transactions(rows, labels, item_names=["x", "y"])


@pytest.fixture
def sim_configuration():
    """Factory of simulated runtime settings."""

    def make(workers: int = 4, seed: int = 0, **simulator) -> RuntimeConfiguration:
        return RuntimeConfiguration(
            workers=workers,
            transport=TransportKind.SIM,
            seed=seed,
            simulator=SimulatorConfiguration(**simulator),
        )

    return make


@st.composite
def databases(
    draw: st.DrawFn,
    max_items: int = 8,
    max_transactions: int = 14,
) -> TransactionDatabase:
    """Random labelled databases with both classes present."""
    num_items = draw(st.integers(min_value=1, max_value=max_items))
    n = draw(st.integers(min_value=2, max_value=max_transactions))
    rows = draw(
        st.lists(
            st.lists(st.integers(0, num_items - 1), max_size=num_items, unique=True),
            min_size=n,
            max_size=n,
        )
    )
    labels = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    labels[0], labels[-1] = 1, 0
    return TransactionDatabase.from_transactions(rows, labels, num_items=num_items)
