from enum import StrEnum
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from patternpype.dtd.wave import WaveStatistics
from patternpype.runtime.configuration import TransportKind
from patternpype.runtime.metrics import WorkerMetrics


class SearchPhase(StrEnum):
    SUPPORT_INCREASE = "support-increase"
    ENUMERATE = "enumerate"


class PhaseSpec(BaseModel):
    """
    What a parallel search run computes.

    ``support-increase`` prunes with a lambda that rises as closed sets are
    counted; ``enumerate`` uses a fixed minimum support.

    Attributes:
        phase (SearchPhase): Kind of search
        alpha (float | None): Target FWER, required by ``support-increase``
        min_support (int | None): Fixed threshold, required by ``enumerate``
        retain (bool): Keep every recorded closed set, not just the counts
    """

    model_config = ConfigDict(frozen=True)

    phase: SearchPhase
    alpha: float | None = Field(default=None, gt=0.0, lt=1.0)
    min_support: int | None = Field(default=None, ge=1)
    retain: bool = False

    @model_validator(mode="after")
    def validate_phase(self) -> Self:
        if self.phase == SearchPhase.SUPPORT_INCREASE and self.alpha is None:
            raise ValueError("support-increase needs alpha")
        if self.phase == SearchPhase.ENUMERATE and self.min_support is None:
            raise ValueError("enumerate needs a minimum support")
        return self

    @classmethod
    def support_increase(cls, alpha: float) -> "PhaseSpec":
        return cls(phase=SearchPhase.SUPPORT_INCREASE, alpha=alpha)

    @classmethod
    def enumeration(cls, min_support: int, retain: bool = True) -> "PhaseSpec":
        return cls(phase=SearchPhase.ENUMERATE, min_support=min_support, retain=retain)


class RetainedNode(BaseModel):
    """A closed set kept by a worker: item ids and the two support counts."""

    model_config = ConfigDict(frozen=True)

    itemset: tuple[int, ...]
    support: int
    positive: int


class WorkerOutcome(BaseModel):
    """
    Attributes:
        worker_id (int): Worker
        metrics (WorkerMetrics): Time breakdown and counters
        retained (list[RetainedNode]): Closed sets kept when the phase retains
        final_lambda (int): Local lambda at termination
        counters (dict[int, int]): Closed sets recorded locally, by support
        waves (WaveStatistics | None): Wave counters, root only
        global_lambda (int | None): Aggregated lambda, root only
        global_counters (dict[int, int] | None): Aggregated counters, root only
    """

    worker_id: int
    metrics: WorkerMetrics
    retained: list[RetainedNode] = Field(default_factory=list)
    final_lambda: int = 1
    counters: dict[int, int] = Field(default_factory=dict)
    waves: WaveStatistics | None = None
    global_lambda: int | None = None
    global_counters: dict[int, int] | None = None


class PhaseOutcome(BaseModel):
    """
    Result of one parallel search run.

    Attributes:
        phase (PhaseSpec): What was computed
        transport (TransportKind): Backend that ran it
        workers (int): Worker count
        final_lambda (int): Aggregated lambda (1 for fixed-threshold phases)
        counters (dict[int, int]): Closed sets found, by support
        retained (list[RetainedNode]): Closed sets kept by all workers
        metrics (list[WorkerMetrics]): Per-worker breakdown
        waves (WaveStatistics): Termination-wave counters
        expansions_per_probe (int): Probe cadence K used
        wall_s (float): Wall-clock time of the run
    """

    phase: PhaseSpec
    transport: TransportKind
    workers: int
    final_lambda: int
    counters: dict[int, int]
    retained: list[RetainedNode] = Field(default_factory=list)
    metrics: list[WorkerMetrics] = Field(default_factory=list)
    waves: WaveStatistics = Field(default_factory=WaveStatistics)
    expansions_per_probe: int = 1
    wall_s: float = 0.0

    @property
    def closed_set_count(self) -> int:
        return sum(self.counters.values())

    @classmethod
    def from_workers(
        cls,
        phase: PhaseSpec,
        transport: TransportKind,
        outcomes: list[WorkerOutcome],
        expansions_per_probe: int,
        wall_s: float,
    ) -> "PhaseOutcome":
        """Combine the worker outcomes; the aggregated values come from worker 0."""
        ordered = sorted(outcomes, key=lambda o: o.worker_id)
        root = ordered[0]
        if root.worker_id != 0 or root.global_counters is None:
            raise ValueError("Outcome of worker 0 missing or incomplete")
        return cls(
            phase=phase,
            transport=transport,
            workers=len(ordered),
            final_lambda=root.global_lambda or 1,
            counters=root.global_counters,
            retained=sorted(
                (node for o in ordered for node in o.retained),
                key=lambda n: n.itemset,
            ),
            metrics=[o.metrics for o in ordered],
            waves=root.waves or WaveStatistics(),
            expansions_per_probe=expansions_per_probe,
            wall_s=wall_s,
        )
