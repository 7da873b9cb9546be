"""
This package provides the message-passing parallel depth-first search: worker
actors with random and lifeline work stealing, the transports that run them and
the protocol checker used by the simulator.
"""

from .calibration import ProbeCalibrator, calibrate_expansions_per_probe
from .checker import ProtocolChecker
from .configuration import (
    FaultKind,
    RuntimeConfiguration,
    SimulatorConfiguration,
    TransportKind,
)
from .engine import SearchEngine, run_phase
from .factory import TransportFactory
from .initializer import TransportsInitializer
from .messages import Message, MessageKind
from .metrics import (
    WorkerMetrics,
    combine_phases,
    format_metrics_table,
    total_metrics,
)
from .models import (
    PhaseOutcome,
    PhaseSpec,
    RetainedNode,
    SearchPhase,
    WorkerOutcome,
)
from .topology import LifelineTopology, build_topology
from .worker import (
    Worker,
    WorkerMode,
    WorkerState,
    owned_items,
    preprocess_partition,
    split_stack,
)

__all__ = [
    "TransportKind",
    "FaultKind",
    "RuntimeConfiguration",
    "SimulatorConfiguration",
    "LifelineTopology",
    "build_topology",
    "Message",
    "MessageKind",
    "WorkerMetrics",
    "format_metrics_table",
    "total_metrics",
    "combine_phases",
    "SearchPhase",
    "PhaseSpec",
    "RetainedNode",
    "WorkerOutcome",
    "PhaseOutcome",
    "Worker",
    "WorkerMode",
    "WorkerState",
    "owned_items",
    "preprocess_partition",
    "split_stack",
    "ProtocolChecker",
    "ProbeCalibrator",
    "calibrate_expansions_per_probe",
    "TransportFactory",
    "TransportsInitializer",
    "SearchEngine",
    "run_phase",
]
