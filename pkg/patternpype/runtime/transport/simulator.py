"""
Deterministic single-threaded scheduler.

Time advances in ticks. Every message gets a delivery tick drawn from
``[min_delay, max_delay]``, raised if needed to keep each sender/receiver pair
FIFO; in every tick the due messages land in the inboxes and each worker, in a
shuffled order and with probability ``step_probability``, probes its inbox and
steps. The whole run is a function of the seed, so any violation found by the
:class:`ProtocolChecker` can be replayed exactly.
"""

import heapq
import random
import time
from collections import deque
from collections.abc import Iterator

from patternpype.dataset.models import TransactionDatabase
from patternpype.dtd.wave import WaveRoot
from patternpype.exceptions import InvariantViolation
from patternpype.runtime.checker import ProtocolChecker
from patternpype.runtime.configuration import (
    FaultKind,
    RuntimeConfiguration,
    TransportKind,
)
from patternpype.runtime.messages import Message, MessageKind
from patternpype.runtime.models import PhaseOutcome, PhaseSpec
from patternpype.runtime.topology import LifelineTopology
from patternpype.runtime.transport.base import Transport
from patternpype.runtime.worker import Worker


class SimulatorTransport(Transport):
    """
    Attributes:
        trace (list[str]): ``tick<TAB>event<TAB>message`` lines when tracing
        ticks (int): Ticks used by the last run
        quiescent_at (int | None): First tick with empty stacks and no basic
            message in flight
        finished_at (int | None): Tick of the termination broadcast
        checker (ProtocolChecker | None): Checker of the last run
    """

    kind = TransportKind.SIM

    def __init__(self, configuration: RuntimeConfiguration):
        super().__init__(configuration)
        self.trace: list[str] = []
        self.ticks = 0
        self.quiescent_at: int | None = None
        self.finished_at: int | None = None
        self.checker: ProtocolChecker | None = None
        self._heap: list[tuple[int, int, Message]] = []
        self._inboxes: list[deque[Message]] = []
        self._last_delivery: dict[tuple[int, int], int] = {}
        self._sequence = 0
        self._fault_injected = False
        self._rng = random.Random(configuration.seed)

    def _reset(self, worker_count: int) -> None:
        self.trace = []
        self.ticks = 0
        self.quiescent_at = None
        self.finished_at = None
        self._heap = []
        self._inboxes = [deque() for _ in range(worker_count)]
        self._last_delivery = {}
        self._sequence = 0
        self._fault_injected = False
        self._rng = random.Random(self.configuration.seed)

    def in_flight(self) -> Iterator[Message]:
        for _, _, message in self._heap:
            yield message
        for inbox in self._inboxes:
            yield from inbox

    def _record(self, event: str, message: Message) -> None:
        if self.configuration.simulator.trace:
            self.trace.append(f"{self.ticks}\t{event}\t{message.describe()}")

    def _draw_delay(self, message: Message) -> int:
        """Ticks until ``message`` lands, before the FIFO adjustment."""
        settings = self.configuration.simulator
        return self._rng.randint(settings.min_delay, settings.max_delay)

    def _enqueue(self, message: Message) -> None:
        pair = (message.source, message.dest)
        deliver_at = max(
            self.ticks + self._draw_delay(message),
            self._last_delivery.get(pair, 0),
        )
        self._last_delivery[pair] = deliver_at
        self._sequence += 1
        heapq.heappush(self._heap, (deliver_at, self._sequence, message))

    def _send(self, message: Message) -> None:
        assert self.checker is not None
        self.checker.on_send(message)
        self._record("send", message)
        self._enqueue(message)
        if (
            self.configuration.simulator.fault == FaultKind.DUPLICATE_GIVE
            and message.kind == MessageKind.GIVE
            and not self._fault_injected
        ):
            self._fault_injected = True
            self._record("inject-duplicate", message)
            self._enqueue(message)

    def _deliver_due(self) -> None:
        assert self.checker is not None
        while self._heap and self._heap[0][0] <= self.ticks:
            _, _, message = heapq.heappop(self._heap)
            self._record("deliver", message)
            self._inboxes[message.dest].append(message)
            self.checker.on_deliver(message)

    def _quiescent(self, workers: list[Worker]) -> bool:
        if any(w.stack for w in workers):
            return False
        return not any(m.is_basic for m in self.in_flight())

    def run(
        self,
        db: TransactionDatabase,
        topology: LifelineTopology,
        phase: PhaseSpec,
        expansions_per_probe: int,
    ) -> PhaseOutcome:
        settings = self.configuration.simulator
        self._reset(topology.worker_count)
        checker = self.checker = ProtocolChecker(topology, self.configuration.seed)
        workers = [
            Worker(
                worker_id,
                db,
                topology,
                phase,
                self.configuration,
                expansions_per_probe,
                self._send,
                observer=checker,
            )
            for worker_id in range(topology.worker_count)
        ]
        checker.attach(workers, self.in_flight)

        started = time.perf_counter()
        for worker in workers:
            worker.start()

        order = list(range(topology.worker_count))
        while not all(w.terminated for w in workers):
            if self.ticks >= settings.max_ticks:
                raise InvariantViolation(
                    "liveness",
                    f"no termination within {settings.max_ticks} ticks",
                    self.configuration.seed,
                )
            self.ticks += 1
            self._deliver_due()
            self._rng.shuffle(order)
            for worker_id in order:
                worker = workers[worker_id]
                if worker.terminated:
                    continue
                if (
                    settings.step_probability < 1.0
                    and self._rng.random() >= settings.step_probability
                ):
                    continue
                inbox = self._inboxes[worker_id]
                messages = list(inbox)
                inbox.clear()
                worker.probe(messages)
                worker.step()
                if self.finished_at is None and checker.finished:
                    self.finished_at = self.ticks
            if settings.strict:
                checker.check_tick()
            if self.quiescent_at is None and self._quiescent(workers):
                self.quiescent_at = self.ticks

        checker.check_complete()
        root = workers[0].wave
        if (
            isinstance(root, WaveRoot)
            and self.quiescent_at is not None
            and self.finished_at is not None
        ):
            root.statistics.ticks_to_finish = self.finished_at - self.quiescent_at
        self.logger().info(
            f"Simulation seed={self.configuration.seed} P={topology.worker_count} "
            f"terminated after {self.ticks} ticks"
        )
        return PhaseOutcome.from_workers(
            phase,
            self.kind,
            [w.outcome() for w in workers],
            expansions_per_probe,
            time.perf_counter() - started,
        )
