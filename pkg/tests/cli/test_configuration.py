from pathlib import Path

import pytest
from pydantic import ValidationError

from patternpype.cli import Command, RunConfig, Workload, fuzz_cases
from patternpype.cli.main import build_parser, config_from_args
from patternpype.lamp import MAX_ORACLE_ITEMS
from patternpype.runtime import FaultKind, TransportKind


class TestRunConfig:
    """Test defaults, cross-field rules and the derived runtime settings."""

    def test_default_transports(self):
        lamp = RunConfig(command=Command.LAMP, transactions=Path("t.csv"))
        bench = RunConfig(command=Command.BENCH, synthetic=Workload.SKEWED)

        assert lamp.transport_kind == TransportKind.SIM
        assert bench.transport_kind == TransportKind.THREADS

    def test_runtime_overrides(self):
        config = RunConfig(
            command=Command.SIM,
            synthetic=Workload.DENSE,
            workers=4,
            seed=2,
            max_delay=9,
            fault=FaultKind.DUPLICATE_GIVE,
        )

        runtime = config.runtime(workers=8, seed=5, trace=True)

        assert (runtime.workers, runtime.seed) == (8, 5)
        assert runtime.simulator.max_delay == 9
        assert runtime.simulator.fault == FaultKind.DUPLICATE_GIVE
        assert runtime.simulator.trace
        assert config.runtime().workers == 4

    @pytest.mark.parametrize(
        "fields",
        [
            {"command": Command.MINE, "transactions": "t.csv"},
            {"command": Command.LAMP, "transactions": "t.csv", "min_support": 2},
            {"command": Command.LAMP, "synthetic": Workload.DENSE},
            {"command": Command.SIM, "transactions": "t.csv", "synthetic": "dense"},
            {"command": Command.LAMP, "labels": "l.txt"},
            {"command": Command.VERIFY},
            {"command": Command.LAMP, "transactions": "t.csv", "fuzz": 3},
            {"command": Command.LAMP, "transactions": "t.csv", "fault": "duplicate-give"},
            {"command": Command.BENCH, "transactions": "t.csv", "workers_list": (0, 2)},
        ],
    )
    def test_rejected_combinations(self, fields):
        with pytest.raises(ValidationError):
            RunConfig(**fields)

    def test_from_command_line(self):
        args = build_parser().parse_args(
            ["bench", "--synthetic", "skewed", "--workers-list", "2,4", "--steal-w", "3"]
        )

        config = config_from_args(args)

        assert config.workers_list == (2, 4)
        assert config.steal_trials == 3
        assert config.synthetic == Workload.SKEWED


class TestFuzzCases:
    def test_seeded_and_small(self):
        first = list(fuzz_cases(7, 5))
        second = list(fuzz_cases(7, 5))

        assert [name for name, _, _ in first] == [f"fuzz-{i}" for i in range(5)]
        for (_, a, alpha_a), (_, b, alpha_b) in zip(first, second, strict=True):
            assert a.transactions() == b.transactions()
            assert alpha_a == alpha_b
            assert a.num_items <= MAX_ORACLE_ITEMS
