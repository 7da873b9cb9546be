"""
This module provides the validated run configuration behind every command of the
``patternpype`` executable.
"""

from enum import StrEnum
from pathlib import Path
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from patternpype.runtime.configuration import (
    FaultKind,
    RuntimeConfiguration,
    SimulatorConfiguration,
    TransportKind,
)


class Command(StrEnum):
    MINE = "mine"
    LAMP = "lamp"
    SIM = "sim"
    BENCH = "bench"
    VERIFY = "verify"


class Workload(StrEnum):
    """Built-in synthetic databases."""

    DENSE = "dense"
    SKEWED = "skewed"


DEFAULT_TRANSPORTS: dict[Command, TransportKind] = {
    Command.MINE: TransportKind.SIM,
    Command.LAMP: TransportKind.SIM,
    Command.SIM: TransportKind.SIM,
    Command.BENCH: TransportKind.THREADS,
    Command.VERIFY: TransportKind.SIM,
}

SYNTHETIC_COMMANDS = frozenset({Command.SIM, Command.BENCH, Command.VERIFY})


class RunConfig(BaseModel):
    """
    Everything one invocation needs.

    Attributes:
        command (Command): Subcommand to run
        transactions (Path | None): Transactions file, or combined CSV
        labels (Path | None): Labels file aligned with ``transactions``
        alpha (float): Target FWER
        min_support (int | None): Mining threshold, ``mine`` only
        workers (int): Worker count P
        transport (TransportKind | None): Backend; the command default when unset
        seed (int): Seed of victims, simulator and generators
        lifeline_length (int): Lifeline hypercube side l
        steal_trials (int): Random steal trials w
        probe_ms (float): Target probe interval
        naive (bool): Disable stealing (``bench`` also runs the stealing mode)
        out (Path | None): Output file, stdout when unset
        trace (Path | None): Where ``sim`` writes its message trace
        fuzz (int | None): Number of random databases ``verify`` checks
        sweep (int): Number of consecutive seeds ``sim`` runs
        workers_list (tuple[int, ...]): Worker counts ``bench`` measures
        fault (FaultKind): Fault injected by ``sim``
        synthetic (Workload | None): Generated database used instead of files
        synthetic_items (int | None): Item count of the generated database
        synthetic_transactions (int | None): Row count of the generated database
        max_delay (int): Largest simulated message delay in ticks
    """

    model_config = ConfigDict(frozen=True)

    command: Command
    transactions: Path | None = None
    labels: Path | None = None
    alpha: float = Field(default=0.05, gt=0.0, lt=1.0)
    min_support: int | None = Field(default=None, ge=1)
    workers: int = Field(default=1, ge=1)
    transport: TransportKind | None = None
    seed: int = Field(default=0, ge=0)
    lifeline_length: int = Field(default=2, ge=2)
    steal_trials: int = Field(default=1, ge=0)
    probe_ms: float = Field(default=1.0, gt=0.0)
    naive: bool = False
    out: Path | None = None
    trace: Path | None = None
    fuzz: int | None = Field(default=None, ge=1)
    sweep: int = Field(default=1, ge=1)
    workers_list: tuple[int, ...] = (1, 2, 4, 8)
    fault: FaultKind = FaultKind.NONE
    synthetic: Workload | None = None
    synthetic_items: int | None = Field(default=None, ge=1)
    synthetic_transactions: int | None = Field(default=None, ge=2)
    max_delay: int = Field(default=4, ge=1)

    @model_validator(mode="after")
    def validate_command(self) -> Self:
        if self.command == Command.MINE and self.min_support is None:
            raise ValueError("mine requires --min-support")
        if self.command != Command.MINE and self.min_support is not None:
            raise ValueError("--min-support only applies to mine")

        transport = self.transport_kind
        if self.command == Command.SIM and transport != TransportKind.SIM:
            raise ValueError("sim requires the sim transport")
        if self.command == Command.BENCH and transport == TransportKind.SIM:
            raise ValueError("bench measures wall time and needs a concurrent transport")

        if self.synthetic is not None and self.command not in SYNTHETIC_COMMANDS:
            raise ValueError(f"--synthetic is not available for {self.command}")
        if self.synthetic is not None and self.transactions is not None:
            raise ValueError("--synthetic and --transactions are exclusive")
        if self.labels is not None and self.transactions is None:
            raise ValueError("--labels requires --transactions")
        has_input = self.transactions is not None or self.synthetic is not None
        if self.command == Command.VERIFY:
            if self.fuzz is not None and has_input:
                raise ValueError("--fuzz generates its own databases")
            if self.fuzz is None and not has_input:
                raise ValueError("verify needs --transactions, --synthetic or --fuzz")
        elif self.fuzz is not None:
            raise ValueError("--fuzz only applies to verify")
        elif not has_input:
            raise ValueError("a database is required (--transactions)")

        if not self.workers_list or min(self.workers_list) < 1:
            raise ValueError("--workers-list entries must be >= 1")
        if self.fault != FaultKind.NONE and self.command != Command.SIM:
            raise ValueError("--fault only applies to sim")
        return self

    @property
    def transport_kind(self) -> TransportKind:
        return self.transport or DEFAULT_TRANSPORTS[self.command]

    def runtime(
        self,
        workers: int | None = None,
        seed: int | None = None,
        naive: bool | None = None,
        trace: bool = False,
    ) -> RuntimeConfiguration:
        """Runtime settings, with per-run overrides for sweeps and benchmarks."""
        return RuntimeConfiguration(
            workers=workers if workers is not None else self.workers,
            transport=self.transport_kind,
            seed=seed if seed is not None else self.seed,
            lifeline_length=self.lifeline_length,
            steal_trials=self.steal_trials,
            probe_ms=self.probe_ms,
            naive=naive if naive is not None else self.naive,
            simulator=SimulatorConfiguration(
                max_delay=self.max_delay, fault=self.fault, trace=trace
            ),
        )
