"""
Per-worker state of the time-based termination detection and the ternary
spanning tree the waves travel on.

Each worker keeps a logical clock holding the id of the last wave that visited
it (or a later one learned from a message), and the difference between basic
messages sent and received. Every basic message is stamped with the sender's
clock. A message stamped with a wave the receiver has not seen yet crossed the
wave from its "future" side into its "past" side; the receiver adopts the newer
clock and taints itself, which invalidates that wave.

Clocks wrap modulo 2**32 and are compared relative to each other, so the
counter stays bounded.
"""

from dataclasses import dataclass

CLOCK_MODULUS = 1 << 32
_HALF_RANGE = 1 << 31
TREE_ARITY = 3


def is_newer(a: int, b: int) -> bool:
    """Whether clock ``a`` is strictly ahead of ``b`` under wrap-around."""
    return 0 < (a - b) % CLOCK_MODULUS < _HALF_RANGE


def newest(a: int, b: int) -> int:
    return a if is_newer(a, b) else b


def next_wave_id(wave_id: int) -> int:
    # 0 is the initial clock of every worker and never names a wave.
    return wave_id % (CLOCK_MODULUS - 1) + 1


def tree_parent(worker_id: int) -> int | None:
    return None if worker_id == 0 else (worker_id - 1) // TREE_ARITY


def tree_children(worker_id: int, worker_count: int) -> tuple[int, ...]:
    first = TREE_ARITY * worker_id + 1
    return tuple(range(first, min(first + TREE_ARITY, worker_count)))


@dataclass(slots=True)
class DtdLocal:
    """
    Attributes:
        clock (int): Id of the newest wave known to this worker
        balance (int): Basic messages sent minus basic messages received
        tainted (bool): A message from a newer wave arrived since the last visit
    """

    clock: int = 0
    balance: int = 0
    tainted: bool = False

    def on_basic_send(self) -> int:
        """Count an outgoing basic message and return its timestamp."""
        self.balance += 1
        return self.clock

    def on_basic_receive(self, timestamp: int) -> None:
        self.balance -= 1
        if is_newer(timestamp, self.clock):
            self.clock = timestamp
            self.tainted = True

    def visit(self, wave_id: int) -> bool:
        """
        Let wave ``wave_id`` pass this worker.

        Returns:
            bool: Whether this worker invalidates the wave
        """
        invalid = self.tainted or not is_newer(wave_id, self.clock)
        self.clock = wave_id
        self.tainted = False
        return invalid
