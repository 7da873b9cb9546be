import time

from patternpype.dataset.models import TransactionDatabase
from patternpype.logger import LoggerMixin
from patternpype.mining.closure import children
from patternpype.mining.node import SearchNode, root_node

MIN_EXPANSIONS = 1
MAX_EXPANSIONS = 4096
WARMUP_NODES = 256
WARMUP_SECONDS = 0.05


class ProbeCalibrator(LoggerMixin):
    """
    Times a short sequential warm-up search and derives how many node
    expansions fit into the target probe interval.
    """

    def __init__(
        self,
        warmup_nodes: int = WARMUP_NODES,
        warmup_seconds: float = WARMUP_SECONDS,
    ):
        self.warmup_nodes = warmup_nodes
        self.warmup_seconds = warmup_seconds

    def seconds_per_expansion(self, db: TransactionDatabase, min_support: int) -> float | None:
        stack: list[SearchNode] = [root_node(db)]
        expanded = 0
        started = time.perf_counter()
        elapsed = 0.0
        while stack and expanded < self.warmup_nodes and elapsed < self.warmup_seconds:
            node = stack.pop()
            stack.extend(reversed(children(db, node, min_support)))
            expanded += 1
            elapsed = time.perf_counter() - started
        if expanded == 0 or elapsed <= 0.0:
            return None
        return elapsed / expanded

    def calibrate(self, db: TransactionDatabase, min_support: int, target_ms: float) -> int:
        per_node = self.seconds_per_expansion(db, min_support)
        if per_node is None:
            return MIN_EXPANSIONS
        estimate = int(round(target_ms / 1000.0 / per_node))
        clamped = min(max(estimate, MIN_EXPANSIONS), MAX_EXPANSIONS)
        if clamped != estimate:
            self.logger().warning(
                f"Probe cadence {estimate} clamped to {clamped} expansions"
            )
        self.logger().info(
            f"Probe every {clamped} expansions ({per_node * 1e6:.1f} us per node)"
        )
        return clamped


def calibrate_expansions_per_probe(
    db: TransactionDatabase, min_support: int, target_ms: float
) -> int:
    """Expansions between probes so that probing happens about every ``target_ms``."""
    if target_ms <= 0:
        raise ValueError(f"target interval must be positive, got {target_ms}")
    return ProbeCalibrator().calibrate(db, max(1, min_support), target_ms)
