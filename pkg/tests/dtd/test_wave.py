"""
Tests for the termination waves and the counter aggregation they carry.
"""

import logging

import pytest

from patternpype.dtd import (
    WaveOutcome,
    WaveParticipant,
    WaveReport,
    WaveRoot,
    aggregate_lambda,
)
from patternpype.lamp import LampState
from patternpype.stats import StatContext


class TestWaveReport:
    def test_merge(self):
        left = WaveReport(
            wave_id=3, balance=2, max_clock=3, counter_deltas={4: 1}, nodes_processed=5
        )
        right = WaveReport(
            wave_id=3,
            balance=-2,
            max_clock=7,
            all_idle=False,
            counter_deltas={4: 2, 6: 1},
            nodes_processed=1,
        )

        merged = left.merge(right)

        assert merged.balance == 0
        assert merged.max_clock == 7
        assert not merged.all_idle
        assert merged.counter_deltas == {4: 3, 6: 1}
        assert merged.nodes_processed == 6
        assert merged.workers == 2

    def test_merge_rejects_other_wave(self):
        with pytest.raises(ValueError):
            WaveReport(wave_id=1).merge(WaveReport(wave_id=2))

    @pytest.mark.parametrize(
        "fields,quiescent",
        [
            ({}, True),
            ({"balance": 1}, False),
            ({"tainted": True}, False),
            ({"all_idle": False}, False),
        ],
    )
    def test_quiescent(self, fields, quiescent):
        assert WaveReport(wave_id=1, **fields).quiescent is quiescent


class TestWaveParticipant:
    """Test collection at an inner node of the tree."""

    def test_waits_for_every_child(self):
        participant = WaveParticipant(1, 8)
        assert participant.children == (4, 5, 6)

        assert participant.begin(WaveReport(wave_id=2)) is None
        assert participant.collect(4, WaveReport(wave_id=2, balance=1)) is None
        assert participant.collect(6, WaveReport(wave_id=2)) is None
        report = participant.collect(5, WaveReport(wave_id=2, balance=-1))

        assert report is not None
        assert report.workers == 4
        assert report.balance == 0
        assert not participant.in_progress

    def test_leaf_completes_at_once(self):
        participant = WaveParticipant(7, 8)

        report = participant.begin(WaveReport(wave_id=1, balance=3))

        assert report == WaveReport(wave_id=1, balance=3)

    def test_stale_report_is_dropped(self, caplog):
        participant = WaveParticipant(1, 8)
        participant.begin(WaveReport(wave_id=2))

        with caplog.at_level(logging.WARNING):
            assert participant.collect(4, WaveReport(wave_id=1)) is None

        assert "stale report" in caplog.text
        assert participant.in_progress

    def test_unexpected_child(self):
        participant = WaveParticipant(1, 8)
        participant.begin(WaveReport(wave_id=2))

        with pytest.raises(ValueError):
            participant.collect(2, WaveReport(wave_id=2))

    def test_overlapping_waves(self):
        participant = WaveParticipant(1, 8)
        participant.begin(WaveReport(wave_id=2))

        with pytest.raises(ValueError):
            participant.begin(WaveReport(wave_id=3))


class TestWaveRoot:
    """Test initiation, backoff and the termination decision."""

    def test_first_poll_starts_a_wave(self):
        root = WaveRoot(4)

        command = root.poll(idle=True)

        assert command is not None
        assert command.wave_id == 1
        assert command.lambda_ == 1
        assert root.statistics.waves_started == 1

    def test_no_new_wave_while_collecting(self):
        root = WaveRoot(4)
        command = root.poll(idle=True)
        root.begin(WaveReport(wave_id=command.wave_id))

        assert root.poll(idle=True) is None

    def test_terminates_on_quiescent_report(self):
        root = WaveRoot(4)
        root.poll(idle=True)

        outcome = root.finish(WaveReport(wave_id=1, counter_deltas={3: 2, 5: 1}))

        assert outcome == WaveOutcome.TERMINATED
        assert root.closed_set_count == 3
        assert root.statistics.retries == 0

    def test_retry_backoff_doubles(self):
        root = WaveRoot(1, min_backoff=1, max_backoff=4)
        command = root.poll(idle=False)
        waits = []
        for _ in range(5):
            outcome = root.finish(WaveReport(wave_id=command.wave_id, balance=1))
            assert outcome == WaveOutcome.RETRY
            skipped = 0
            while (command := root.poll(idle=False)) is None:
                skipped += 1
            waits.append(skipped)

        assert waits == [1, 2, 4, 4, 4]
        assert root.statistics.retries == 5
        assert root.statistics.waves_started == 6

    def test_backoff_resets_when_root_goes_idle(self):
        root = WaveRoot(1, min_backoff=1, max_backoff=64)
        command = root.poll(idle=False)
        root.finish(WaveReport(wave_id=command.wave_id, balance=1))
        assert root.poll(idle=False) is None
        command = root.poll(idle=False)
        root.finish(WaveReport(wave_id=command.wave_id, balance=1))

        command = root.poll(idle=True)

        assert command is not None
        assert command.wave_id == 3

    def test_counters_advance_global_lambda(self):
        state = LampState(StatContext(n_total=10, n_positive=5), 0.3)
        root = WaveRoot(2, global_state=state)
        root.poll(idle=True)

        root.finish(WaveReport(wave_id=1, counter_deltas={5: 1, 3: 1}, balance=1))

        assert root.global_lambda == state.lambda_
        assert root.global_lambda == 4
        assert root.counters == {5: 1, 3: 1}

    def test_aggregate_lambda(self):
        state = LampState(StatContext(n_total=10, n_positive=5), 0.3)

        assert aggregate_lambda(state, {5: 1, 3: 1}) == state.lambda_
