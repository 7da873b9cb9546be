"""
Wall-clock properties of work stealing on the concurrent backends.

Deselected by default; run with ``pytest -m benchmark`` on a machine with at
least eight idle cores.
"""

import os
import sys

import pytest

from patternpype.dataset import generate_database, generate_skewed_database
from patternpype.runtime import PhaseSpec, RuntimeConfiguration, SearchEngine, TransportKind

pytestmark = [
    pytest.mark.benchmark,
    pytest.mark.timeout(1800),
    pytest.mark.skipif((os.cpu_count() or 1) < 8, reason="needs eight cores"),
]

SINGLE_WORKER_BUDGET_S = 30.0
DENSE_ROWS = 240
MIN_SUPPORT = 2

GIL_ENABLED = getattr(sys, "_is_gil_enabled", lambda: True)()


def timed_enumeration(db, workers, naive=False, transport=TransportKind.PROCESSES):
    configuration = RuntimeConfiguration(
        workers=workers, transport=transport, naive=naive
    )
    outcome = SearchEngine(configuration).run_phase(
        db, PhaseSpec.enumeration(MIN_SUPPORT, retain=False)
    )
    return outcome, max(m.busy_s for m in outcome.metrics)


@pytest.fixture(scope="module")
def skewed_db():
    return generate_skewed_database(num_items=40, num_transactions=160, seed=0)


@pytest.fixture(scope="module")
def dense_workload():
    """
    Seeded dense database grown one item at a time until a single worker
    needs the budget, together with that single-worker outcome.
    """
    for num_items in range(16, 64):
        db = generate_database(
            num_items, DENSE_ROWS, density=0.35, planted_size=3, seed=0
        )
        single, _ = timed_enumeration(db, 1)
        if single.wall_s >= SINGLE_WORKER_BUDGET_S:
            return db, single
    pytest.fail("no dense database reached the single-worker budget")


def test_stealing_balances_a_skewed_tree(skewed_db):
    naive, naive_busy = timed_enumeration(skewed_db, 8, naive=True)
    steal, steal_busy = timed_enumeration(skewed_db, 8, naive=False)

    assert steal.closed_set_count == naive.closed_set_count
    assert steal.wall_s <= 0.6 * naive.wall_s
    assert steal_busy < naive_busy


@pytest.mark.parametrize(
    "transport",
    [
        TransportKind.PROCESSES,
        pytest.param(
            TransportKind.THREADS,
            marks=pytest.mark.skipif(GIL_ENABLED, reason="threads share the GIL"),
        ),
    ],
)
def test_speedup_with_eight_workers(dense_workload, transport):
    db, single = dense_workload
    if transport != TransportKind.PROCESSES:
        single, _ = timed_enumeration(db, 1, transport=transport)

    eight, _ = timed_enumeration(db, 8, transport=transport)

    assert eight.closed_set_count == single.closed_set_count
    assert single.wall_s / eight.wall_s >= 4.0
