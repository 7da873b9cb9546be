"""
Entry point of a parallel search phase: builds the topology, fixes the probe
cadence and hands the phase to the configured transport.
"""

from patternpype.dataset.models import TransactionDatabase
from patternpype.logger import LoggerMixin
from patternpype.runtime.calibration import calibrate_expansions_per_probe
from patternpype.runtime.configuration import RuntimeConfiguration, TransportKind
from patternpype.runtime.factory import TransportFactory
from patternpype.runtime.initializer import TransportsInitializer
from patternpype.runtime.models import PhaseOutcome, PhaseSpec, SearchPhase
from patternpype.runtime.topology import LifelineTopology, build_topology
from patternpype.runtime.transport.base import Transport

# Simulated runs must not depend on wall-clock timing.
SIMULATOR_EXPANSIONS_PER_PROBE = 4


class SearchEngine(LoggerMixin):
    """
    Runs search phases with one runtime configuration.

    Attributes:
        configuration (RuntimeConfiguration): Settings shared by every phase
        topology (LifelineTopology): Lifeline graph of the workers
        last_transport (Transport | None): Transport of the most recent phase,
            kept so callers can inspect simulator traces and checkers
    """

    def __init__(self, configuration: RuntimeConfiguration | None = None):
        self.configuration = configuration or RuntimeConfiguration()
        self.topology = build_topology(
            self.configuration.workers,
            self.configuration.lifeline_length,
            self.configuration.seed,
            self.configuration.steal_trials,
        )
        self.last_transport: Transport | None = None
        if not TransportsInitializer.is_configured():
            TransportsInitializer.configure()

    def expansions_per_probe(self, db: TransactionDatabase, phase: PhaseSpec) -> int:
        if self.configuration.expansions_per_probe is not None:
            return self.configuration.expansions_per_probe
        if self.configuration.transport == TransportKind.SIM:
            return SIMULATOR_EXPANSIONS_PER_PROBE
        min_support = phase.min_support if phase.phase == SearchPhase.ENUMERATE else 1
        return calibrate_expansions_per_probe(
            db, min_support or 1, self.configuration.probe_ms
        )

    def run_phase(self, db: TransactionDatabase, phase: PhaseSpec) -> PhaseOutcome:
        transport = TransportFactory.create(self.configuration)
        self.last_transport = transport
        cadence = self.expansions_per_probe(db, phase)
        self.logger().info(
            f"{phase.phase} phase on {self.configuration.workers} "
            f"{self.configuration.transport} workers, probe every {cadence}"
        )
        outcome = transport.run(db, self.topology, phase, cadence)
        self.logger().info(
            f"{phase.phase} phase done in {outcome.wall_s:.3f}s, lambda="
            f"{outcome.final_lambda}, closed sets={outcome.closed_set_count}"
        )
        return outcome


def run_phase(
    db: TransactionDatabase,
    phase: PhaseSpec,
    configuration: RuntimeConfiguration | None = None,
) -> PhaseOutcome:
    return SearchEngine(configuration).run_phase(db, phase)
