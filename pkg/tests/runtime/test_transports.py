import io

import pytest

from patternpype.mining import count_closed_sequential
from patternpype.runtime import (
    PhaseSpec,
    ProbeCalibrator,
    RuntimeConfiguration,
    SearchEngine,
    TransportFactory,
    TransportKind,
    TransportsInitializer,
    WorkerMetrics,
    calibrate_expansions_per_probe,
    combine_phases,
    format_metrics_table,
)
from patternpype.runtime.calibration import MAX_EXPANSIONS, MIN_EXPANSIONS
from patternpype.runtime.engine import SIMULATOR_EXPANSIONS_PER_PROBE
from patternpype.runtime.transport.simulator import SimulatorTransport
from patternpype.runtime.transport.threads import ThreadsTransport


@pytest.fixture
def isolated_factory():
    """Restore the session registrations after a test that changes them."""
    saved = dict(TransportFactory._transport_classes)
    yield TransportFactory
    TransportFactory.clear()
    TransportFactory._transport_classes.update(saved)


class TestTransportFactory:
    def test_builtins_registered(self):
        assert set(TransportFactory.get_transport_kinds()) == set(TransportKind)
        assert TransportsInitializer.is_configured()

    def test_create(self):
        transport = TransportFactory.create(RuntimeConfiguration(workers=2))

        assert isinstance(transport, SimulatorTransport)
        assert transport.configuration.workers == 2

    def test_unknown_kind(self, isolated_factory):
        isolated_factory.clear()
        TransportsInitializer.configure([TransportKind.SIM])

        with pytest.raises(ValueError, match="not found"):
            isolated_factory.get_transport_class(TransportKind.THREADS)

    def test_register_under_another_kind(self, isolated_factory):
        isolated_factory.register_transport_class(ThreadsTransport, TransportKind.SIM)

        transport = isolated_factory.create(RuntimeConfiguration())

        assert isinstance(transport, ThreadsTransport)


class TestProbeCadence:
    """Test how the engine fixes K."""

    def test_simulator_is_fixed(self, lattice_db):
        engine = SearchEngine(RuntimeConfiguration(workers=2, probe_ms=50.0))

        assert (
            engine.expansions_per_probe(lattice_db, PhaseSpec.enumeration(1))
            == SIMULATOR_EXPANSIONS_PER_PROBE
        )

    def test_explicit_value_wins(self, lattice_db):
        engine = SearchEngine(
            RuntimeConfiguration(transport=TransportKind.THREADS, expansions_per_probe=7)
        )

        assert engine.expansions_per_probe(lattice_db, PhaseSpec.enumeration(1)) == 7

    def test_calibration_is_clamped(self, busy_db):
        assert calibrate_expansions_per_probe(busy_db, 1, 1e-9) == MIN_EXPANSIONS
        assert calibrate_expansions_per_probe(busy_db, 1, 1e9) == MAX_EXPANSIONS

    def test_calibration_rejects_bad_target(self, busy_db):
        with pytest.raises(ValueError):
            calibrate_expansions_per_probe(busy_db, 1, 0.0)

    def test_warmup_time(self, busy_db):
        per_node = ProbeCalibrator(warmup_nodes=32).seconds_per_expansion(busy_db, 1)

        assert per_node is not None
        assert per_node > 0.0


class TestConcurrentTransports:
    """Small end-to-end runs on real threads and processes."""

    @pytest.mark.parametrize("workers", [1, 3])
    def test_threads(self, busy_db, workers):
        configuration = RuntimeConfiguration(
            workers=workers, transport=TransportKind.THREADS, seed=1
        )

        outcome = SearchEngine(configuration).run_phase(
            busy_db, PhaseSpec.enumeration(3)
        )

        assert outcome.transport == TransportKind.THREADS
        assert outcome.closed_set_count == count_closed_sequential(busy_db, 3)
        assert sorted(m.worker_id for m in outcome.metrics) == list(range(workers))

    @pytest.mark.timeout(120)
    def test_processes(self, busy_db):
        configuration = RuntimeConfiguration(
            workers=2, transport=TransportKind.PROCESSES, start_method="spawn"
        )

        outcome = SearchEngine(configuration).run_phase(
            busy_db, PhaseSpec.enumeration(3)
        )

        assert outcome.closed_set_count == count_closed_sequential(busy_db, 3)
        assert len(outcome.retained) == outcome.closed_set_count


class TestMetrics:
    def test_combine_phases(self):
        first = [WorkerMetrics(worker_id=0, main_s=1.0), WorkerMetrics(worker_id=1)]
        second = [
            WorkerMetrics(worker_id=1, nodes_expanded=4),
            WorkerMetrics(worker_id=0, main_s=0.5, messages_sent=2),
        ]

        combined = combine_phases(first, second)

        assert [m.worker_id for m in combined] == [0, 1]
        assert combined[0].main_s == 1.5
        assert combined[0].messages_sent == 2
        assert combined[1].nodes_expanded == 4

    def test_table(self):
        out = io.StringIO()
        metrics = [
            WorkerMetrics(worker_id=1, main_s=0.25, nodes_expanded=3),
            WorkerMetrics(worker_id=0, probe_s=0.5, steals_succeeded=1),
        ]

        format_metrics_table(out, metrics, metadata=[("workers", 2)])

        assert out.getvalue().splitlines() == [
            "# workers\t2",
            "worker\tmain_s\tpreprocess_s\tprobe_s\tidle_s\tnodes_expanded"
            "\tsteals_attempted\tsteals_succeeded\tmessages_sent",
            "0\t0.000000\t0.000000\t0.500000\t0.000000\t0\t0\t1\t0",
            "1\t0.250000\t0.000000\t0.000000\t0.000000\t3\t0\t0\t0",
            "total\t0.250000\t0.000000\t0.500000\t0.000000\t3\t0\t1\t0",
        ]
