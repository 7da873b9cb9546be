"""
This module provides the worker actor of the parallel depth-first search.

A worker owns a stack of search nodes and reacts to two calls made by its
transport: :meth:`Worker.probe` handles the messages delivered since the last
call, and :meth:`Worker.step` pops and expands up to ``K`` nodes. When its stack
runs dry the worker steals: up to ``w`` random victims one at a time, then one
request along every lifeline that is not already active, after which it idles
until work arrives. A victim answers every request with exactly one GIVE
(the bottom half of its stack) or REJECT; a rejected lifeline thief is
remembered and receives work as soon as the victim has some to spare.

Termination detection and the lambda aggregation run on the same messages; see
:mod:`patternpype.dtd`.
"""

import random
import time
from collections import deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any, Protocol

from patternpype.dataset.models import TransactionDatabase
from patternpype.dtd.local import DtdLocal
from patternpype.dtd.wave import (
    WaveCommand,
    WaveOutcome,
    WaveParticipant,
    WaveReport,
    WaveRoot,
)
from patternpype.lamp.state import LampState
from patternpype.logger import LoggerMixin
from patternpype.mining.closure import children
from patternpype.mining.node import SearchNode, node_from_wire, root_node
from patternpype.runtime.configuration import RuntimeConfiguration
from patternpype.runtime.messages import Message, MessageKind
from patternpype.runtime.metrics import WorkerMetrics
from patternpype.runtime.models import (
    PhaseSpec,
    RetainedNode,
    SearchPhase,
    WorkerOutcome,
)
from patternpype.runtime.topology import LifelineTopology
from patternpype.stats.context import StatContext

MIN_SPLITTABLE = 2


class WorkerMode(StrEnum):
    RUNNING = "running"
    STEALING = "stealing"
    IDLE = "idle"
    TERMINATED = "terminated"


class WorkerObserver(Protocol):
    """Hooks a protocol checker attaches to every worker."""

    def on_push(self, worker_id: int, keys: Sequence[tuple[int, ...]]) -> None: ...

    def on_pop(self, worker_id: int, key: tuple[int, ...]) -> None: ...

    def on_finish(self, worker_id: int) -> None: ...


@dataclass(slots=True)
class WorkerState:
    """
    Attributes:
        worker_id (int): Worker id
        node_stack (list[SearchNode]): LIFO of pending nodes, bottom first
        lifeline_activated (dict[int, bool]): Lifeline neighbour -> request outstanding
        pending_requests (deque[Message]): Steal requests awaiting a reply
        outstanding_request (int | None): Id of the unanswered random request
        lifeline_thieves (dict[int, None]): Workers whose lifeline request was
            rejected here, in arrival order
        mode (WorkerMode): Current mode
        metrics (WorkerMetrics): Time breakdown and counters
    """

    worker_id: int
    node_stack: list[SearchNode] = field(default_factory=list)
    lifeline_activated: dict[int, bool] = field(default_factory=dict)
    pending_requests: deque[Message] = field(default_factory=deque)
    outstanding_request: int | None = None
    lifeline_thieves: dict[int, None] = field(default_factory=dict)
    mode: WorkerMode = WorkerMode.RUNNING
    metrics: WorkerMetrics = field(default_factory=lambda: WorkerMetrics(worker_id=0))


def split_stack(stack: Sequence[SearchNode]) -> tuple[list[SearchNode], list[SearchNode]]:
    """
    Split a stack for a work transfer.

    Returns:
        tuple: ``(kept, given)`` where ``given`` is the bottom ``ceil(n/2)``
            nodes and ``kept`` the rest, both in their original order

    Raises:
        ValueError: If the stack holds fewer than two nodes
    """
    if len(stack) < MIN_SPLITTABLE:
        raise ValueError(f"A stack of {len(stack)} node(s) cannot be split")
    cut = -(-len(stack) // 2)
    return list(stack[cut:]), list(stack[:cut])


def owned_items(num_items: int, worker_count: int, worker_id: int) -> list[int]:
    return list(range(worker_id, num_items, worker_count))


def preprocess_partition(
    db: TransactionDatabase, worker_count: int, worker_id: int, min_support: int = 1
) -> list[SearchNode]:
    """Depth-1 nodes whose core item ``e`` satisfies ``e % P == worker_id``."""
    if not 0 <= worker_id < worker_count:
        raise ValueError(f"worker id {worker_id} outside [0, {worker_count})")
    root = root_node(db)
    if root.support < min_support:
        return []
    return children(
        db, root, min_support, owned_items(db.num_items, worker_count, worker_id)
    )


class Worker(LoggerMixin):
    """
    One search worker.

    Attributes:
        worker_id (int): Id in ``[0, P)``
        state (WorkerState): Stack, steal bookkeeping, mode and metrics
        dtd (DtdLocal): Termination-detection clock and balance
        wave (WaveParticipant): Wave collector; a :class:`WaveRoot` on worker 0
        lamp (LampState | None): Local support-increase state, phase 1 only
    """

    def __init__(
        self,
        worker_id: int,
        db: TransactionDatabase,
        topology: LifelineTopology,
        phase: PhaseSpec,
        config: RuntimeConfiguration,
        expansions_per_probe: int,
        send: Callable[[Message], None],
        observer: WorkerObserver | None = None,
        clock: Callable[[], float] = time.perf_counter,
    ):
        self.worker_id = worker_id
        self.db = db
        self.topology = topology
        self.phase = phase
        self.naive = config.naive
        self.expansions_per_probe = expansions_per_probe
        self._transport_send = send
        self._observer = observer
        self._clock = clock

        self.state = WorkerState(
            worker_id=worker_id,
            lifeline_activated={ll: False for ll in topology.lifelines_of(worker_id)},
            metrics=WorkerMetrics(worker_id=worker_id),
        )
        self.dtd = DtdLocal()
        self.lamp: LampState | None = None
        global_state: LampState | None = None
        if phase.phase == SearchPhase.SUPPORT_INCREASE:
            assert phase.alpha is not None
            ctx = StatContext.from_database(db)
            self.lamp = LampState(ctx, phase.alpha)
            if worker_id == 0:
                global_state = LampState(ctx, phase.alpha)
        self.wave: WaveParticipant = (
            WaveRoot(
                topology.worker_count,
                global_state,
                config.min_backoff,
                config.max_backoff,
            )
            if worker_id == 0
            else WaveParticipant(worker_id, topology.worker_count)
        )

        self._rng = random.Random(topology.victim_seeds[worker_id])
        self._trials_left = 0
        self._next_request_id = 0
        self._counters: dict[int, int] = {}
        self._deltas: dict[int, int] = {}
        self._processed_since_wave = 0
        self._retained: list[RetainedNode] = []
        self._started_at: float | None = None
        self._finished_at: float | None = None
        self._idle_since: float | None = None

    # Queries

    @property
    def mode(self) -> WorkerMode:
        return self.state.mode

    @property
    def stack(self) -> list[SearchNode]:
        return self.state.node_stack

    @property
    def terminated(self) -> bool:
        return self.state.mode == WorkerMode.TERMINATED

    @property
    def is_idle(self) -> bool:
        """Idle workers only become active again by receiving a basic message."""
        return (
            self.state.mode == WorkerMode.IDLE
            and not self.state.node_stack
            and self.state.outstanding_request is None
        )

    @property
    def busy(self) -> bool:
        return self.state.mode == WorkerMode.RUNNING

    def threshold(self) -> int:
        if self.lamp is not None:
            return self.lamp.lambda_
        assert self.phase.min_support is not None
        return self.phase.min_support

    # Transport entry points

    def start(self) -> None:
        """Initial partition: record the owned depth-1 closed sets, stack their children."""
        self._started_at = started = self._clock()
        root = root_node(self.db)
        if root.support >= self.threshold():
            if self.worker_id == 0 and root.itemset:
                self._record(root)
            owned = owned_items(
                self.db.num_items, self.topology.worker_count, self.worker_id
            )
            for node in children(self.db, root, self.threshold(), owned):
                if node.support < self.threshold():
                    continue
                self.state.metrics.nodes_expanded += 1
                self._record(node)
                self._push(children(self.db, node, self.threshold()))
        self.state.metrics.preprocess_s += self._clock() - started
        self.logger().debug(
            f"Worker {self.worker_id} preprocessed, {len(self.stack)} nodes stacked"
        )
        if not self.stack:
            self.steal()

    def probe(self, messages: Sequence[Message]) -> None:
        """Handle delivered messages, then answer queued steal requests."""
        if self.terminated:
            if messages:
                self.logger().debug(
                    f"Worker {self.worker_id} ignored {len(messages)} messages after FINISH"
                )
            return
        started = self._clock()
        for message in messages:
            self._handle(message)
            if self.terminated:
                break
        if not self.terminated:
            self._service_requests()
            if isinstance(self.wave, WaveRoot):
                self._poll_wave(self.wave)
        self.state.metrics.probe_s += self._clock() - started

    def step(self) -> None:
        """Expand up to ``K`` nodes; start stealing when the stack runs dry."""
        if self.state.mode != WorkerMode.RUNNING:
            return
        started = self._clock()
        stack = self.state.node_stack
        for _ in range(self.expansions_per_probe):
            if not stack:
                break
            self._process(stack.pop())
        self.state.metrics.main_s += self._clock() - started
        self._service_requests()
        if not stack:
            self.steal()

    def outcome(self) -> WorkerOutcome:
        metrics = self.state.metrics
        if self._started_at is not None:
            end = self._finished_at if self._finished_at is not None else self._clock()
            metrics.idle_s = max(0.0, end - self._started_at - metrics.busy_s)
        root = self.wave if isinstance(self.wave, WaveRoot) else None
        return WorkerOutcome(
            worker_id=self.worker_id,
            metrics=metrics,
            retained=list(self._retained),
            final_lambda=self.lamp.lambda_ if self.lamp is not None else 1,
            counters=dict(self._counters),
            waves=root.statistics if root is not None else None,
            global_lambda=root.global_lambda if root is not None else None,
            global_counters=dict(root.counters) if root is not None else None,
        )

    # Search

    def _push(self, nodes: Sequence[SearchNode]) -> None:
        if not nodes:
            return
        self.state.node_stack.extend(reversed(nodes))
        if self._observer is not None:
            self._observer.on_push(self.worker_id, [n.itemset for n in nodes])

    def _process(self, node: SearchNode) -> None:
        if self._observer is not None:
            self._observer.on_pop(self.worker_id, node.itemset)
        self.state.metrics.nodes_expanded += 1
        self._processed_since_wave += 1
        if node.support < self.threshold():
            return
        self._record(node)
        self._push(children(self.db, node, self.threshold()))

    def _record(self, node: SearchNode) -> None:
        support = node.support
        self._counters[support] = self._counters.get(support, 0) + 1
        if self.lamp is not None:
            self.lamp.record_closed_set(support)
        else:
            self._deltas[support] = self._deltas.get(support, 0) + 1
        if self.phase.retain:
            self._retained.append(
                RetainedNode(
                    itemset=node.itemset, support=support, positive=node.positive
                )
            )

    def _take_deltas(self) -> dict[int, int]:
        if self.lamp is not None:
            return self.lamp.take_deltas()
        deltas, self._deltas = self._deltas, {}
        return deltas

    # Messaging

    def _send(self, kind: MessageKind, dest: int, **fields: Any) -> None:
        timestamp = self.dtd.on_basic_send() if kind.is_basic else 0
        message = Message(
            kind=kind, source=self.worker_id, dest=dest, timestamp=timestamp, **fields
        )
        self.state.metrics.messages_sent += 1
        self._transport_send(message)

    def _handle(self, message: Message) -> None:
        if message.is_basic:
            self.dtd.on_basic_receive(message.timestamp)
        match message.kind:
            case MessageKind.REQUEST:
                self.state.pending_requests.append(message)
            case MessageKind.REJECT:
                self._on_reject(message)
            case MessageKind.GIVE:
                self._on_give(message)
            case MessageKind.CONTROL_DOWN:
                assert message.command is not None
                self._join_wave(message.command)
            case MessageKind.CONTROL_UP:
                assert message.report is not None
                self._on_wave_report(message.source, message.report)
            case MessageKind.FINISH:
                self._terminate()

    # Stealing

    def _service_requests(self) -> None:
        """Distribute to queued thieves while the stack splits, reject the rest,
        then feed remembered lifeline thieves."""
        state = self.state
        while state.pending_requests and len(state.node_stack) >= MIN_SPLITTABLE:
            request = state.pending_requests.popleft()
            self._give(request.source, request.request_id)
        while state.pending_requests:
            request = state.pending_requests.popleft()
            self._send(MessageKind.REJECT, request.source, reply_to=request.request_id)
            if request.lifeline:
                state.lifeline_thieves[request.source] = None
        while state.lifeline_thieves and len(state.node_stack) >= MIN_SPLITTABLE:
            thief = next(iter(state.lifeline_thieves))
            self._give(thief, None)

    def _give(self, dest: int, reply_to: int | None) -> None:
        kept, given = split_stack(self.state.node_stack)
        self.state.node_stack[:] = kept
        self.state.lifeline_thieves.pop(dest, None)
        self.logger().debug(f"Worker {self.worker_id} gives {len(given)} nodes to {dest}")
        self._send(
            MessageKind.GIVE,
            dest,
            reply_to=reply_to,
            nodes=tuple(node.to_wire() for node in given),
        )

    def steal(self) -> None:
        """Called with an empty stack: random trials first, then the lifelines."""
        if self.terminated:
            return
        if self.naive or not self.topology.stealing_enabled:
            self._enter_idle()
            return
        self.state.mode = WorkerMode.STEALING
        self._trials_left = self.topology.random_steal_trials
        if self.state.outstanding_request is None:
            self._next_random_steal()

    def _next_random_steal(self) -> None:
        state = self.state
        if self._trials_left > 0:
            self._trials_left -= 1
            request_id = self._new_request_id()
            state.outstanding_request = request_id
            state.metrics.steals_attempted += 1
            self._send(MessageKind.REQUEST, self._random_victim(), request_id=request_id)
            return
        for neighbour, active in state.lifeline_activated.items():
            if not active:
                state.lifeline_activated[neighbour] = True
                state.metrics.steals_attempted += 1
                self._send(
                    MessageKind.REQUEST,
                    neighbour,
                    request_id=self._new_request_id(),
                    lifeline=True,
                )
        self._enter_idle()

    def _random_victim(self) -> int:
        victim = self._rng.randrange(self.topology.worker_count - 1)
        return victim + 1 if victim >= self.worker_id else victim

    def _new_request_id(self) -> int:
        self._next_request_id += 1
        return self._next_request_id

    def _enter_idle(self) -> None:
        self.state.mode = WorkerMode.IDLE

    def _on_reject(self, message: Message) -> None:
        state = self.state
        if message.reply_to == state.outstanding_request:
            state.outstanding_request = None
            if state.mode == WorkerMode.STEALING:
                self._next_random_steal()

    def _on_give(self, message: Message) -> None:
        state = self.state
        state.node_stack.extend(node_from_wire(self.db, wire) for wire in message.nodes)
        state.metrics.steals_succeeded += 1
        if message.reply_to is not None and message.reply_to == state.outstanding_request:
            state.outstanding_request = None
        if message.source in state.lifeline_activated:
            state.lifeline_activated[message.source] = False
        state.mode = WorkerMode.RUNNING

    # Termination waves

    def _poll_wave(self, root: WaveRoot) -> None:
        idle = self.is_idle
        if idle and self._idle_since is None:
            self._idle_since = self._clock()
        elif not idle:
            self._idle_since = None
        command = root.poll(idle)
        if command is not None:
            self._join_wave(command)

    def _join_wave(self, command: WaveCommand) -> None:
        if self.lamp is not None:
            self.lamp.adopt_lambda(command.lambda_)
        for child in self.wave.children:
            self._send(MessageKind.CONTROL_DOWN, child, command=command)
        complete = self.wave.begin(self._snapshot(command.wave_id))
        if complete is not None:
            self._report(complete)

    def _snapshot(self, wave_id: int) -> WaveReport:
        self._service_requests()
        invalid = self.dtd.visit(wave_id)
        processed, self._processed_since_wave = self._processed_since_wave, 0
        return WaveReport(
            wave_id=wave_id,
            balance=self.dtd.balance,
            max_clock=self.dtd.clock,
            tainted=invalid,
            all_idle=self.is_idle,
            counter_deltas=self._take_deltas(),
            nodes_processed=processed,
        )

    def _on_wave_report(self, child: int, report: WaveReport) -> None:
        complete = self.wave.collect(child, report)
        if complete is not None:
            self._report(complete)

    def _report(self, report: WaveReport) -> None:
        if not isinstance(self.wave, WaveRoot):
            assert self.wave.parent is not None
            self._send(MessageKind.CONTROL_UP, self.wave.parent, report=report)
            return
        outcome = self.wave.finish(report)
        if self.lamp is not None:
            self.lamp.adopt_lambda(self.wave.global_lambda)
        if outcome == WaveOutcome.TERMINATED:
            if self._idle_since is not None:
                self.wave.statistics.seconds_to_finish = self._clock() - self._idle_since
            if self._observer is not None:
                self._observer.on_finish(self.worker_id)
            self._terminate()

    def _terminate(self) -> None:
        for child in self.wave.children:
            self._send(MessageKind.FINISH, child)
        self.state.mode = WorkerMode.TERMINATED
        self._finished_at = self._clock()
        self.logger().debug(f"Worker {self.worker_id} terminated")
