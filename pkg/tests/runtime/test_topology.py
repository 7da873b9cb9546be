import pytest
from hypothesis import given
from hypothesis import strategies as st

from patternpype.runtime import build_topology
from patternpype.runtime.topology import hypercube_dimension


class TestLifelines:
    """Test the lifeline hypercube."""

    def test_incomplete_cube_drops_missing_ids(self):
        topology = build_topology(5)

        assert topology.dimension == 3
        assert topology.lifelines_of(3) == (2, 1)
        assert topology.lifelines_of(4) == (0,)

    def test_full_cube(self):
        topology = build_topology(8)

        assert topology.lifelines_of(0) == (1, 2, 4)
        assert topology.lifelines_of(7) == (6, 5, 3)

    def test_wider_side(self):
        topology = build_topology(9, side_length=3)

        assert topology.dimension == 2
        assert topology.lifelines_of(4) == (5, 7)
        assert topology.lifelines_of(8) == (6, 2)

    def test_single_worker(self):
        topology = build_topology(1)

        assert topology.dimension == 0
        assert topology.lifelines == ((),)
        assert not topology.stealing_enabled

    @given(workers=st.integers(1, 80), side=st.integers(2, 5))
    def test_always_connected(self, workers, side):
        topology = build_topology(workers, side_length=side)

        assert topology.is_connected()
        assert side**topology.dimension >= workers
        for worker_id, lifelines in enumerate(topology.lifelines):
            assert worker_id not in lifelines
            assert len(lifelines) <= topology.dimension
            assert all(0 <= t < workers for t in lifelines)

    def test_dimension_is_minimal(self):
        assert hypercube_dimension(1, 2) == 0
        assert hypercube_dimension(2, 2) == 1
        assert hypercube_dimension(8, 2) == 3
        assert hypercube_dimension(9, 2) == 4


class TestVictimSeeds:
    def test_seeded_and_distinct(self):
        first = build_topology(16, seed=3)
        second = build_topology(16, seed=3)

        assert first.victim_seeds == second.victim_seeds
        assert len(set(first.victim_seeds)) == 16
        assert build_topology(16, seed=4).victim_seeds != first.victim_seeds


@pytest.mark.parametrize(
    "kwargs",
    [
        {"worker_count": 0},
        {"worker_count": 4, "side_length": 1},
        {"worker_count": 4, "steal_trials": -1},
    ],
)
def test_invalid_arguments(kwargs):
    with pytest.raises(ValueError):
        build_topology(**kwargs)
