"""
Lifeline hypercube over the workers.

Worker ids are written in base ``l`` with ``z`` digits, ``z`` being the smallest
dimension with ``P <= l**z``. Lifeline ``j`` of a worker is the id obtained by
incrementing its ``j``-th digit modulo ``l``; ids ``>= P`` are dropped.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict


class LifelineTopology(BaseModel):
    """
    Attributes:
        worker_count (int): P
        side_length (int): l
        dimension (int): z
        lifelines (tuple[tuple[int, ...], ...]): LL(j) per worker, by digit
        random_steal_trials (int): w
        victim_seeds (tuple[int, ...]): Seed of each worker's victim generator
    """

    model_config = ConfigDict(frozen=True)

    worker_count: int
    side_length: int
    dimension: int
    lifelines: tuple[tuple[int, ...], ...]
    random_steal_trials: int
    victim_seeds: tuple[int, ...]

    @property
    def stealing_enabled(self) -> bool:
        return self.worker_count > 1

    def lifelines_of(self, worker_id: int) -> tuple[int, ...]:
        return self.lifelines[worker_id]

    def is_connected(self) -> bool:
        """Whether the undirected union of the lifeline edges spans every worker."""
        adjacency: list[set[int]] = [set() for _ in range(self.worker_count)]
        for source, targets in enumerate(self.lifelines):
            for target in targets:
                adjacency[source].add(target)
                adjacency[target].add(source)
        seen = {0}
        frontier = [0]
        while frontier:
            for neighbour in adjacency[frontier.pop()]:
                if neighbour not in seen:
                    seen.add(neighbour)
                    frontier.append(neighbour)
        return len(seen) == self.worker_count


def hypercube_dimension(worker_count: int, side_length: int) -> int:
    dimension, span = 0, 1
    while span < worker_count:
        span *= side_length
        dimension += 1
    return dimension


def lifeline_neighbours(
    worker_id: int, worker_count: int, side_length: int, dimension: int
) -> tuple[int, ...]:
    neighbours = []
    for j in range(dimension):
        weight = side_length**j
        digit = (worker_id // weight) % side_length
        target = worker_id + (((digit + 1) % side_length) - digit) * weight
        if target < worker_count and target != worker_id:
            neighbours.append(target)
    return tuple(neighbours)


def build_topology(
    worker_count: int, side_length: int = 2, seed: int = 0, steal_trials: int = 1
) -> LifelineTopology:
    """
    Build the lifeline graph and the per-worker victim seeds.

    Raises:
        ValueError: If ``worker_count < 1``, ``side_length < 2`` or
            ``steal_trials < 0``
    """
    if worker_count < 1:
        raise ValueError(f"worker count must be >= 1, got {worker_count}")
    if side_length < 2:
        raise ValueError(f"side length must be >= 2, got {side_length}")
    if steal_trials < 0:
        raise ValueError(f"steal trials must be >= 0, got {steal_trials}")

    dimension = hypercube_dimension(worker_count, side_length)
    seeds = np.random.SeedSequence(seed).generate_state(worker_count, dtype=np.uint64)
    return LifelineTopology(
        worker_count=worker_count,
        side_length=side_length,
        dimension=dimension,
        lifelines=tuple(
            lifeline_neighbours(i, worker_count, side_length, dimension)
            for i in range(worker_count)
        ),
        random_steal_trials=steal_trials,
        victim_seeds=tuple(int(s) for s in seeds),
    )
