"""
Termination waves over the ternary tree, with counter aggregation riding the
upward reports and the global lambda riding the downward command.

The root starts a wave by visiting itself and sending the command to its
children; every worker visits itself on arrival, forwards the command and
reports upwards once all of its children have reported. The root declares
termination when the merged report shows a zero message balance, no taint and
every worker idle; otherwise it merges the counters, advances lambda and tries
again after a doubling backoff.
"""

from collections.abc import Mapping
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from patternpype.dtd.local import newest, next_wave_id, tree_children, tree_parent
from patternpype.lamp.state import LampState
from patternpype.logger import LoggerMixin


class WaveOutcome(StrEnum):
    TERMINATED = "terminated"
    RETRY = "retry"


class WaveCommand(BaseModel):
    """Downward payload: the wave id and the global lambda known at the root."""

    model_config = ConfigDict(frozen=True)

    wave_id: int
    lambda_: int = 1


class WaveReport(BaseModel):
    """
    Upward payload, merged at every inner node of the tree.

    Attributes:
        wave_id (int): Wave the report belongs to
        balance (int): Sum of the message balances of the subtree
        max_clock (int): Newest clock seen in the subtree
        tainted (bool): Whether any worker of the subtree invalidated the wave
        all_idle (bool): Whether every worker of the subtree was idle when visited
        counter_deltas (dict[int, int]): Closed sets recorded since the previous
            wave, keyed by support
        nodes_processed (int): Nodes popped since the previous wave
        workers (int): Number of workers merged into the report
    """

    model_config = ConfigDict(frozen=True)

    wave_id: int
    balance: int = 0
    max_clock: int = 0
    tainted: bool = False
    all_idle: bool = True
    counter_deltas: dict[int, int] = Field(default_factory=dict)
    nodes_processed: int = 0
    workers: int = 1

    def merge(self, other: "WaveReport") -> "WaveReport":
        if other.wave_id != self.wave_id:
            raise ValueError(f"Cannot merge wave {other.wave_id} into {self.wave_id}")
        deltas = dict(self.counter_deltas)
        for support, count in other.counter_deltas.items():
            deltas[support] = deltas.get(support, 0) + count
        return WaveReport(
            wave_id=self.wave_id,
            balance=self.balance + other.balance,
            max_clock=newest(self.max_clock, other.max_clock),
            tainted=self.tainted or other.tainted,
            all_idle=self.all_idle and other.all_idle,
            counter_deltas=deltas,
            nodes_processed=self.nodes_processed + other.nodes_processed,
            workers=self.workers + other.workers,
        )

    @property
    def quiescent(self) -> bool:
        return self.balance == 0 and not self.tainted and self.all_idle


class WaveStatistics(BaseModel):
    """
    Attributes:
        waves_started (int): Waves initiated by the root
        retries (int): Completed waves that did not terminate
        ticks_to_finish (int | None): Simulator ticks from true quiescence to
            the termination broadcast
        seconds_to_finish (float | None): Time from the root's last transition
            to idle until termination
    """

    waves_started: int = 0
    retries: int = 0
    ticks_to_finish: int | None = None
    seconds_to_finish: float | None = None


def aggregate_lambda(state: LampState, deltas: Mapping[int, int]) -> int:
    """Merge counters gathered by a wave and return the advanced global lambda."""
    return state.merge_counters(deltas)


class WaveParticipant(LoggerMixin):
    """Collects the reports of a worker's subtree for the wave in progress."""

    def __init__(self, worker_id: int, worker_count: int):
        self.worker_id = worker_id
        self.parent = tree_parent(worker_id)
        self.children = tree_children(worker_id, worker_count)
        self._report: WaveReport | None = None
        self._waiting: set[int] = set()

    @property
    def in_progress(self) -> bool:
        return self._report is not None

    def begin(self, own: WaveReport) -> WaveReport | None:
        """Start collecting for a wave; returns the subtree report if complete."""
        if self._report is not None:
            raise ValueError(
                f"Worker {self.worker_id} joined wave {own.wave_id} while wave "
                f"{self._report.wave_id} is still collecting"
            )
        self._report = own
        self._waiting = set(self.children)
        return self._complete()

    def collect(self, child: int, report: WaveReport) -> WaveReport | None:
        if self._report is None or report.wave_id != self._report.wave_id:
            self.logger().warning(
                f"Worker {self.worker_id} dropped stale report of wave "
                f"{report.wave_id} from {child}"
            )
            return None
        if child not in self._waiting:
            raise ValueError(f"Unexpected report from {child} at {self.worker_id}")
        self._waiting.discard(child)
        self._report = self._report.merge(report)
        return self._complete()

    def _complete(self) -> WaveReport | None:
        if self._waiting or self._report is None:
            return None
        report, self._report = self._report, None
        return report


class WaveRoot(WaveParticipant):
    """
    Wave initiation, backoff and the termination decision at worker 0.

    Attributes:
        global_state (LampState | None): Merged counters and global lambda of
            the support-increase phase; ``None`` for fixed-threshold phases
        counters (dict[int, int]): Merged closed-set counts by support
        statistics (WaveStatistics): Wave counters of the run
    """

    def __init__(
        self,
        worker_count: int,
        global_state: LampState | None = None,
        min_backoff: int = 1,
        max_backoff: int = 64,
    ):
        super().__init__(0, worker_count)
        self.global_state = global_state
        self.counters: dict[int, int] = {}
        self.nodes_processed = 0
        self.statistics = WaveStatistics()
        self.min_backoff = min_backoff
        self.max_backoff = max_backoff
        self._wave_id = 0
        self._backoff = min_backoff
        self._cooldown = 0
        self._was_idle = False

    @property
    def wave_id(self) -> int:
        return self._wave_id

    @property
    def global_lambda(self) -> int:
        return self.global_state.lambda_ if self.global_state is not None else 1

    def poll(self, idle: bool) -> WaveCommand | None:
        """
        Called at every probe of the root.

        Returns:
            WaveCommand | None: The command of a new wave when one should start
        """
        if idle and not self._was_idle:
            self._backoff = self.min_backoff
            self._cooldown = 0
        self._was_idle = idle
        if self.in_progress:
            return None
        if self._cooldown > 0:
            self._cooldown -= 1
            return None
        self._wave_id = next_wave_id(self._wave_id)
        self.statistics.waves_started += 1
        return WaveCommand(wave_id=self._wave_id, lambda_=self.global_lambda)

    def finish(self, report: WaveReport) -> WaveOutcome:
        """Merge a completed wave and decide whether the run has terminated."""
        for support, count in report.counter_deltas.items():
            self.counters[support] = self.counters.get(support, 0) + count
        self.nodes_processed += report.nodes_processed
        if self.global_state is not None and report.counter_deltas:
            aggregate_lambda(self.global_state, report.counter_deltas)

        if report.quiescent:
            self.logger().info(
                f"Wave {report.wave_id} terminated the run after "
                f"{self.statistics.waves_started} waves"
            )
            return WaveOutcome.TERMINATED

        self.statistics.retries += 1
        self._cooldown = self._backoff
        self._backoff = min(self._backoff * 2, self.max_backoff)
        self.logger().debug(
            f"Wave {report.wave_id} retry (balance={report.balance}, "
            f"tainted={report.tainted}, idle={report.all_idle})"
        )
        return WaveOutcome.RETRY

    @property
    def closed_set_count(self) -> int:
        return sum(self.counters.values())
