"""
This module provides configuration classes for the parallel search runtime: the
choice of transport, the lifeline and stealing parameters, the probe cadence,
the termination-wave backoff and the deterministic simulator settings.
"""

from enum import StrEnum
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator


class TransportKind(StrEnum):
    SIM = "sim"
    THREADS = "threads"
    PROCESSES = "processes"


class FaultKind(StrEnum):
    """Faults the simulator can inject to exercise the protocol checker."""

    NONE = "none"
    DUPLICATE_GIVE = "duplicate-give"


class SimulatorConfiguration(BaseModel):
    """
    Settings of the deterministic single-threaded scheduler.

    Attributes:
        min_delay (int): Smallest delivery delay in ticks
        max_delay (int): Largest delivery delay in ticks
        step_probability (float): Chance that a worker is scheduled in a tick
        max_ticks (int): Tick budget; exceeding it is a liveness violation
        fault (FaultKind): Fault to inject, ``none`` for a clean run
        trace (bool): Record every message event
        strict (bool): Run the conservation checks after every tick
    """

    model_config = ConfigDict(frozen=True)

    min_delay: int = Field(default=1, ge=1)
    max_delay: int = Field(default=4, ge=1)
    step_probability: float = Field(default=1.0, gt=0.0, le=1.0)
    max_ticks: int = Field(default=1_000_000, ge=1)
    fault: FaultKind = FaultKind.NONE
    trace: bool = False
    strict: bool = True

    @model_validator(mode="after")
    def validate_delays(self) -> Self:
        if self.max_delay < self.min_delay:
            raise ValueError("max_delay must be >= min_delay")
        return self


class RuntimeConfiguration(BaseModel):
    """
    Settings shared by every transport.

    Attributes:
        workers (int): Number of workers P
        transport (TransportKind): Execution backend
        seed (int): Seed of the victim generators and the simulator
        lifeline_length (int): Side length l of the lifeline hypercube
        steal_trials (int): Random steal trials w before falling back to lifelines
        probe_ms (float): Target interval between probes
        expansions_per_probe (int | None): Fixed probe cadence K; calibrated
            from ``probe_ms`` when unset
        naive (bool): Disable stealing after the initial partition
        min_backoff (int): Probes the root waits before the first retry wave
        max_backoff (int): Upper bound of the doubling retry backoff
        idle_wait_s (float): Blocking receive timeout of idle workers on
            concurrent transports
        start_method (str | None): multiprocessing start method
        simulator (SimulatorConfiguration): Scheduler settings for ``sim``
    """

    model_config = ConfigDict(frozen=True)

    workers: int = Field(default=1, ge=1)
    transport: TransportKind = TransportKind.SIM
    seed: int = 0
    lifeline_length: int = Field(default=2, ge=2)
    steal_trials: int = Field(default=1, ge=0)
    probe_ms: float = Field(default=1.0, gt=0.0)
    expansions_per_probe: int | None = Field(default=None, ge=1)
    naive: bool = False
    min_backoff: int = Field(default=1, ge=1)
    max_backoff: int = Field(default=64, ge=1)
    idle_wait_s: float = Field(default=0.001, gt=0.0)
    start_method: str | None = None
    simulator: SimulatorConfiguration = Field(default_factory=SimulatorConfiguration)

    @model_validator(mode="after")
    def validate_backoff(self) -> Self:
        if self.max_backoff < self.min_backoff:
            raise ValueError("max_backoff must be >= min_backoff")
        return self
