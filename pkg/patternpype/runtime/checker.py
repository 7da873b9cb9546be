"""
Protocol checker attached to simulated runs.

It watches node generation and consumption through the worker hooks and every
message through the simulator, and raises :class:`InvariantViolation` as soon
as one of these properties fails:

- ``work-conservation``: every generated node is consumed exactly once, and at
  every tick stacked plus in-flight nodes equal the live ones
- ``handshake``: every REQUEST receives exactly one REJECT or GIVE
- ``steal-storm``: at most one unanswered random REQUEST per worker and at most
  one unanswered lifeline REQUEST per lifeline
- ``finish-safety``: termination is only declared with no basic message in
  flight and every stack empty
"""

from collections import Counter
from collections.abc import Callable, Iterable, Sequence

from patternpype.exceptions import InvariantViolation
from patternpype.logger import LoggerMixin
from patternpype.runtime.messages import Message, MessageKind
from patternpype.runtime.topology import LifelineTopology
from patternpype.runtime.worker import Worker

NodeKey = tuple[int, ...]


class ProtocolChecker(LoggerMixin):
    """
    Attributes:
        seed (int | None): Scheduler seed, quoted in violations
        generated (int): Nodes pushed by expansions
        consumed (int): Nodes popped
        requests (int): REQUEST messages sent
        replies (int): Replies delivered
        finished (bool): Whether termination was declared
    """

    def __init__(self, topology: LifelineTopology, seed: int | None = None):
        self.topology = topology
        self.seed = seed
        self.generated = 0
        self.consumed = 0
        self.requests = 0
        self.replies = 0
        self.finished = False
        self._seen: set[NodeKey] = set()
        self._live: set[NodeKey] = set()
        self._travelling: Counter[NodeKey] = Counter()
        self._open_requests: dict[tuple[int, int], Message] = {}
        self._workers: Sequence[Worker] = ()
        self._in_flight: Callable[[], Iterable[Message]] = tuple

    def attach(
        self, workers: Sequence[Worker], in_flight: Callable[[], Iterable[Message]]
    ) -> None:
        self._workers = workers
        self._in_flight = in_flight

    def _fail(self, property_name: str, detail: str) -> None:
        error = InvariantViolation(property_name, detail, self.seed)
        self.logger().error(str(error))
        raise error

    # Worker hooks

    def on_push(self, worker_id: int, keys: Sequence[NodeKey]) -> None:
        for key in keys:
            if key in self._seen:
                self._fail(
                    "work-conservation",
                    f"node {key} generated twice (worker {worker_id})",
                )
            self._seen.add(key)
            self._live.add(key)
        self.generated += len(keys)

    def on_pop(self, worker_id: int, key: NodeKey) -> None:
        if key not in self._live:
            self._fail(
                "work-conservation",
                f"node {key} processed twice or never generated (worker {worker_id})",
            )
        self._live.discard(key)
        self.consumed += 1

    def on_finish(self, worker_id: int) -> None:
        in_flight = [m for m in self._in_flight() if m.is_basic]
        if in_flight:
            self._fail(
                "finish-safety",
                f"worker {worker_id} declared termination with {len(in_flight)} "
                f"basic messages in flight, first {in_flight[0].describe()}",
            )
        busy = [w.worker_id for w in self._workers if w.stack]
        if busy:
            self._fail(
                "finish-safety", f"termination declared with work on workers {busy}"
            )
        self.finished = True

    # Transport hooks

    def on_send(self, message: Message) -> None:
        if message.kind == MessageKind.REQUEST:
            assert message.request_id is not None
            self.requests += 1
            self._open_requests[(message.source, message.request_id)] = message
            self._check_storm(message.source)
        elif message.kind == MessageKind.GIVE:
            for wire_itemset, _ in message.nodes:
                key = tuple(wire_itemset)
                if key not in self._live or self._travelling[key]:
                    self._fail(
                        "work-conservation",
                        f"{message.describe()} carries node {key} that is not "
                        "exclusively held by the sender",
                    )
                self._travelling[key] += 1

    def on_deliver(self, message: Message) -> None:
        if message.kind == MessageKind.GIVE:
            for wire_itemset, _ in message.nodes:
                key = tuple(wire_itemset)
                if self._travelling[key] == 0:
                    self._fail(
                        "work-conservation",
                        f"{message.describe()} delivered node {key} twice",
                    )
                self._travelling[key] -= 1
        if message.kind in (MessageKind.REJECT, MessageKind.GIVE):
            if message.reply_to is None:
                return
            self.replies += 1
            if self._open_requests.pop((message.dest, message.reply_to), None) is None:
                self._fail("handshake", f"{message.describe()} answers no open request")

    def _check_storm(self, worker_id: int) -> None:
        random_open = 0
        lifeline_open: Counter[int] = Counter()
        for (source, _), request in self._open_requests.items():
            if source != worker_id:
                continue
            if request.lifeline:
                lifeline_open[request.dest] += 1
            else:
                random_open += 1
        if random_open > 1:
            self._fail(
                "steal-storm",
                f"worker {worker_id} has {random_open} random requests open",
            )
        lifelines = set(self.topology.lifelines_of(worker_id))
        for dest, count in lifeline_open.items():
            if count > 1 or dest not in lifelines:
                self._fail(
                    "steal-storm",
                    f"worker {worker_id} has {count} lifeline requests open to {dest}",
                )

    # Whole-system checks

    def check_tick(self) -> None:
        """Stacked plus in-flight nodes must account for every live node."""
        stacked = sum(len(w.stack) for w in self._workers)
        travelling = sum(len(m.nodes) for m in self._in_flight())
        if stacked + travelling != len(self._live):
            self._fail(
                "work-conservation",
                f"{stacked} stacked + {travelling} in flight != {len(self._live)} live",
            )

    def check_complete(self) -> None:
        """End-of-run checks: nothing left live, every request answered."""
        if self._live:
            self._fail(
                "work-conservation",
                f"{len(self._live)} generated nodes were never processed",
            )
        if self._open_requests:
            (source, request_id), request = next(iter(self._open_requests.items()))
            self._fail(
                "handshake",
                f"request {request_id} of worker {source} to {request.dest} "
                "never answered",
            )
        if not self.finished:
            self._fail("liveness", "run ended without termination")
