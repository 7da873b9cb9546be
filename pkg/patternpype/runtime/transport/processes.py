"""
One OS process per worker with ``multiprocessing`` queues as channels.

Threads share the interpreter lock, so wall-clock speedups are measured on this
backend. The database, topology and phase are pickled into every process; each
worker sends back its :class:`WorkerOutcome` through a result queue.
"""

import queue
import time
import traceback
from multiprocessing import get_context
from multiprocessing.queues import Queue
from multiprocessing.synchronize import Event
from typing import Any

from patternpype.dataset.models import TransactionDatabase
from patternpype.exceptions import PatternpypeError
from patternpype.runtime.configuration import RuntimeConfiguration, TransportKind
from patternpype.runtime.messages import Message
from patternpype.runtime.models import PhaseOutcome, PhaseSpec, WorkerOutcome
from patternpype.runtime.topology import LifelineTopology
from patternpype.runtime.transport.base import Transport, drive_worker
from patternpype.runtime.worker import Worker

RESULT_POLL_S = 0.5


def _process_main(
    worker_id: int,
    db: TransactionDatabase,
    topology: LifelineTopology,
    phase: PhaseSpec,
    configuration: RuntimeConfiguration,
    expansions_per_probe: int,
    inboxes: list["Queue[Message]"],
    results: "Queue[tuple[int, WorkerOutcome | None, str | None]]",
    abort: Event,
) -> None:
    def send(message: Message) -> None:
        inboxes[message.dest].put(message)

    worker = Worker(
        worker_id, db, topology, phase, configuration, expansions_per_probe, send
    )
    try:
        drive_worker(worker, inboxes[worker_id], configuration.idle_wait_s, abort.is_set)
    except BaseException:
        abort.set()
        results.put((worker_id, None, traceback.format_exc()))
        return
    results.put((worker_id, worker.outcome(), None))


class ProcessesTransport(Transport):
    kind = TransportKind.PROCESSES

    def run(
        self,
        db: TransactionDatabase,
        topology: LifelineTopology,
        phase: PhaseSpec,
        expansions_per_probe: int,
    ) -> PhaseOutcome:
        context = get_context(self.configuration.start_method)
        inboxes: list[Any] = [context.Queue() for _ in range(topology.worker_count)]
        results: Any = context.Queue()
        abort = context.Event()
        processes = [
            context.Process(
                target=_process_main,
                args=(
                    worker_id,
                    db,
                    topology,
                    phase,
                    self.configuration,
                    expansions_per_probe,
                    inboxes,
                    results,
                    abort,
                ),
                name=f"patternpype-worker-{worker_id}",
                daemon=True,
            )
            for worker_id in range(topology.worker_count)
        ]

        started = time.perf_counter()
        for process in processes:
            process.start()
        outcomes: list[WorkerOutcome] = []
        failure: str | None = None
        try:
            while len(outcomes) < len(processes) and failure is None:
                try:
                    worker_id, outcome, error = results.get(timeout=RESULT_POLL_S)
                except queue.Empty:
                    dead = [
                        p.name
                        for p in processes
                        if p.exitcode is not None and p.exitcode != 0
                    ]
                    if dead:
                        failure = f"processes {dead} exited abnormally"
                    continue
                if error is not None:
                    failure = f"worker {worker_id} failed:\n{error}"
                elif outcome is not None:
                    outcomes.append(outcome)
            wall = time.perf_counter() - started
        finally:
            if failure is not None:
                abort.set()
            for process in processes:
                process.join(timeout=5.0)
                if process.is_alive():
                    process.terminate()

        if failure is not None:
            self.logger().error(failure)
            raise PatternpypeError(failure)
        return PhaseOutcome.from_workers(
            phase, self.kind, outcomes, expansions_per_probe, wall
        )
