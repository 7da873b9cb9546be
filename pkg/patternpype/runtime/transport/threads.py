import queue
import threading
import time

from patternpype.dataset.models import TransactionDatabase
from patternpype.runtime.configuration import TransportKind
from patternpype.runtime.messages import Message
from patternpype.runtime.models import PhaseOutcome, PhaseSpec
from patternpype.runtime.topology import LifelineTopology
from patternpype.runtime.transport.base import Transport, drive_worker
from patternpype.runtime.worker import Worker


class ThreadsTransport(Transport):
    """One thread per worker, one ``queue.Queue`` inbox per worker."""

    kind = TransportKind.THREADS

    def run(
        self,
        db: TransactionDatabase,
        topology: LifelineTopology,
        phase: PhaseSpec,
        expansions_per_probe: int,
    ) -> PhaseOutcome:
        inboxes: list[queue.Queue[Message]] = [
            queue.Queue() for _ in range(topology.worker_count)
        ]

        def send(message: Message) -> None:
            inboxes[message.dest].put(message)

        workers = [
            Worker(
                worker_id,
                db,
                topology,
                phase,
                self.configuration,
                expansions_per_probe,
                send,
            )
            for worker_id in range(topology.worker_count)
        ]
        failures: list[BaseException] = []
        abort = threading.Event()

        def target(worker: Worker) -> None:
            try:
                drive_worker(
                    worker,
                    inboxes[worker.worker_id],
                    self.configuration.idle_wait_s,
                    abort.is_set,
                )
            except BaseException as error:
                self.logger().error(f"Worker {worker.worker_id} failed: {error!r}")
                failures.append(error)
                abort.set()

        threads = [
            threading.Thread(
                target=target,
                args=(w,),
                name=f"patternpype-worker-{w.worker_id}",
                daemon=True,
            )
            for w in workers
        ]
        started = time.perf_counter()
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        wall = time.perf_counter() - started
        if failures:
            raise failures[0]
        return PhaseOutcome.from_workers(
            phase,
            self.kind,
            [w.outcome() for w in workers],
            expansions_per_probe,
            wall,
        )
