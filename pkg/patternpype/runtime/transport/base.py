"""
Transport interface and the receive loop shared by the concurrent backends.

A transport owns the workers of one phase: it creates them, delivers their
messages (reliable, FIFO per sender/receiver pair, no duplication), drives the
``probe``/``step`` cycle until every worker has terminated and gathers the
outcomes.
"""

import queue
from abc import ABC, abstractmethod
from collections.abc import Callable
from typing import ClassVar, Protocol

from patternpype.dataset.models import TransactionDatabase
from patternpype.logger import LoggerMixin
from patternpype.runtime.configuration import RuntimeConfiguration, TransportKind
from patternpype.runtime.messages import Message
from patternpype.runtime.models import PhaseOutcome, PhaseSpec
from patternpype.runtime.topology import LifelineTopology
from patternpype.runtime.worker import Worker


class Inbox(Protocol):
    """The part of ``queue.Queue`` / ``multiprocessing.Queue`` the loop uses."""

    def get(self, block: bool = True, timeout: float | None = None) -> Message: ...

    def get_nowait(self) -> Message: ...


def drive_worker(
    worker: Worker,
    inbox: Inbox,
    idle_wait_s: float,
    aborted: Callable[[], bool] | None = None,
) -> None:
    """
    Run one worker to termination on a concurrent backend.

    A busy worker polls its inbox without blocking between batches of
    expansions; an idle or stealing one blocks for at most ``idle_wait_s`` so
    the root keeps starting waves. ``aborted`` stops the loop early when another
    worker of the run has failed.
    """
    worker.start()
    while not worker.terminated:
        if aborted is not None and aborted():
            return
        messages: list[Message] = []
        if not worker.busy:
            try:
                messages.append(inbox.get(timeout=idle_wait_s))
            except queue.Empty:
                pass
        while True:
            try:
                messages.append(inbox.get_nowait())
            except queue.Empty:
                break
        worker.probe(messages)
        worker.step()


class Transport(LoggerMixin, ABC):
    """
    Attributes:
        kind (TransportKind): Registry key of the implementation
        configuration (RuntimeConfiguration): Settings of the run
    """

    kind: ClassVar[TransportKind]

    def __init__(self, configuration: RuntimeConfiguration):
        self.configuration = configuration

    @abstractmethod
    def run(
        self,
        db: TransactionDatabase,
        topology: LifelineTopology,
        phase: PhaseSpec,
        expansions_per_probe: int,
    ) -> PhaseOutcome:
        """Run one phase to global termination."""
        raise NotImplementedError
