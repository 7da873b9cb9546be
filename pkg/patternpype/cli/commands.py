"""
Implementations of the ``patternpype`` subcommands.

Each command reads its database, runs the engine and writes TSV tables to the
given stream. Failures are raised as :mod:`patternpype.exceptions` errors; the
entry point turns them into exit statuses.
"""

import contextlib
import sys
from collections.abc import Callable, Iterator
from pathlib import Path
from typing import TextIO

import numpy as np

from patternpype.cli.configuration import Command, RunConfig, Workload
from patternpype.dataset import (
    TransactionDatabase,
    generate_database,
    generate_skewed_database,
    load,
)
from patternpype.exceptions import DatasetError, InvariantViolation, VerificationError
from patternpype.lamp import (
    MAX_ORACLE_ITEMS,
    compare_with_oracle,
    exhaustive_lamp,
    format_float,
    min_support_from,
    write_closed_table,
    write_lamp_report,
)
from patternpype.lamp.procedure import (
    LampProcedure,
    LampRun,
    mine_closed,
    support_increase_sequential,
)
from patternpype.logger import LoggerMixin
from patternpype.runtime import (
    PhaseOutcome,
    PhaseSpec,
    SearchEngine,
    WorkerMetrics,
    combine_phases,
    format_metrics_table,
)
from patternpype.runtime.transport.simulator import SimulatorTransport

SIM_COLUMNS = (
    "seed",
    "workers",
    "lambda",
    "CS",
    "ticks",
    "waves",
    "wave_retries",
    "ticks_to_finish",
    "messages",
    "verdict",
)
BENCH_COLUMNS = (
    "mode",
    "workers",
    "wall_s",
    "speedup",
    "max_busy_s",
    "nodes_expanded",
    "steals_succeeded",
    "lambda",
    "CS",
)
VERIFY_COLUMNS = (
    "case",
    "items",
    "transactions",
    "alpha",
    "lambda",
    "CS",
    "significant",
    "verdict",
)

DENSE_SHAPE = (16, 120)
SKEWED_SHAPE = (40, 120)
FUZZ_MAX_ITEMS = 14
FUZZ_MAX_TRANSACTIONS = 40
FUZZ_ALPHAS = (0.01, 0.05, 0.3)


class CommandLogger(LoggerMixin):
    """Logger owner for the module-level command functions."""


def _write_row(out: TextIO, cells: tuple[object, ...]) -> None:
    out.write("\t".join(str(c) for c in cells) + "\n")


@contextlib.contextmanager
def open_output(path: Path | None) -> Iterator[TextIO]:
    """The ``--out`` file, or stdout when none was given."""
    if path is None:
        yield sys.stdout
        return
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        yield handle


def load_input(config: RunConfig) -> TransactionDatabase:
    if config.synthetic == Workload.DENSE:
        items, rows = DENSE_SHAPE
        return generate_database(
            config.synthetic_items or items,
            config.synthetic_transactions or rows,
            density=0.35,
            planted_size=3,
            seed=config.seed,
        )
    if config.synthetic == Workload.SKEWED:
        items, rows = SKEWED_SHAPE
        return generate_skewed_database(
            num_items=config.synthetic_items or items,
            num_transactions=config.synthetic_transactions or rows,
            seed=config.seed,
        )
    if config.transactions is None:
        raise DatasetError("no database given")
    return load(config.transactions, config.labels)


def cmd_mine(config: RunConfig, out: TextIO) -> None:
    assert config.min_support is not None
    db = load_input(config)
    closed, _ = mine_closed(db, config.min_support, config.runtime())
    CommandLogger.logger().info(
        f"{len(closed)} closed sets with support >= {config.min_support}"
    )
    write_closed_table(
        out, closed, db.num_transactions, db.num_positive, config.min_support
    )


def cmd_lamp(config: RunConfig, out: TextIO) -> None:
    db = load_input(config)
    run = LampProcedure(config.runtime()).run(db, config.alpha)
    write_lamp_report(out, run.result)


def _simulator_of(engine: SearchEngine) -> SimulatorTransport:
    transport = engine.last_transport
    if not isinstance(transport, SimulatorTransport):
        raise TypeError("sim runs need the simulator transport")
    return transport


def cmd_sim(config: RunConfig, out: TextIO) -> None:
    """
    Run both search phases under every seed of the sweep and check each run
    against the protocol checker and a sequential reference.

    Raises:
        InvariantViolation: The first violation of the sweep, after every
            seed has been reported
    """
    db = load_input(config)
    reference = support_increase_sequential(db, config.alpha, prune=False)
    expected_lambda = reference.lambda_
    expected_cs = reference.closed_set_count(min_support_from(expected_lambda))

    violations: list[InvariantViolation] = []
    trace_lines: list[str] = []
    rows: list[tuple[object, ...]] = []
    for seed in range(config.seed, config.seed + config.sweep):
        engine = SearchEngine(config.runtime(seed=seed, trace=config.trace is not None))
        outcomes: list[PhaseOutcome] = []
        ticks = 0
        try:
            for spec in (
                PhaseSpec.support_increase(config.alpha),
                PhaseSpec.enumeration(min_support_from(expected_lambda)),
            ):
                try:
                    outcomes.append(engine.run_phase(db, spec))
                finally:
                    simulator = _simulator_of(engine)
                    ticks += simulator.ticks
                    trace_lines.extend(
                        f"{seed}\t{spec.phase}\t{line}" for line in simulator.trace
                    )
            first, second = outcomes
            if first.final_lambda != expected_lambda:
                raise InvariantViolation(
                    "aggregation",
                    f"lambda {first.final_lambda}, sequential {expected_lambda}",
                    seed,
                )
            if second.closed_set_count != expected_cs:
                raise InvariantViolation(
                    "aggregation",
                    f"CS {second.closed_set_count}, sequential {expected_cs}",
                    seed,
                )
        except InvariantViolation as e:
            CommandLogger.logger().error(str(e))
            violations.append(e)
            verdict = f"violation:{e.property_name}"
            rows.append((seed, config.workers, "-", "-", ticks, *("-",) * 4, verdict))
            continue

        messages = sum(m.messages_sent for o in outcomes for m in o.metrics)
        waves = second.waves
        rows.append(
            (
                seed,
                config.workers,
                first.final_lambda,
                second.closed_set_count,
                ticks,
                first.waves.waves_started + waves.waves_started,
                first.waves.retries + waves.retries,
                waves.ticks_to_finish if waves.ticks_to_finish is not None else "-",
                messages,
                "ok",
            )
        )

    out.write(f"# workers\t{config.workers}\n")
    out.write(f"# max_delay\t{config.max_delay}\n")
    out.write(f"# fault\t{config.fault}\n")
    out.write(f"# violations\t{len(violations)}\n")
    _write_row(out, SIM_COLUMNS)
    for row in rows:
        _write_row(out, row)

    if config.trace is not None:
        config.trace.write_text(
            "".join(f"{line}\n" for line in trace_lines), encoding="utf-8"
        )
    if violations:
        raise violations[0]


def _max_busy(metrics: list[WorkerMetrics]) -> float:
    return max((m.busy_s for m in metrics), default=0.0)


def cmd_bench(config: RunConfig, out: TextIO) -> None:
    """
    Time the LAMP phases for every worker count, always including P=1 as the
    speedup baseline, with stealing and, with ``--naive``, without it.
    """
    db = load_input(config)
    counts = sorted({1, *config.workers_list})
    modes = [False, True] if config.naive else [False]

    runs: list[tuple[str, int, LampRun, list[WorkerMetrics]]] = []
    rows: list[tuple[object, ...]] = []
    for naive in modes:
        mode = "naive" if naive else "steal"
        baseline = 0.0
        for workers in counts:
            run = LampProcedure(config.runtime(workers=workers, naive=naive)).run(
                db, config.alpha
            )
            wall = run.support_increase.wall_s + run.enumeration.wall_s
            if workers == 1:
                baseline = wall
            speedup = 1.0 if workers == 1 or wall <= 0.0 else baseline / wall
            metrics = combine_phases(run.support_increase.metrics, run.enumeration.metrics)
            runs.append((mode, workers, run, metrics))
            rows.append(
                (
                    mode,
                    workers,
                    f"{wall:.6f}",
                    f"{speedup:.3f}",
                    f"{_max_busy(metrics):.6f}",
                    sum(m.nodes_expanded for m in metrics),
                    sum(m.steals_succeeded for m in metrics),
                    run.result.final_lambda,
                    run.result.correction_factor,
                )
            )
            CommandLogger.logger().info(
                f"{mode} P={workers}: {wall:.3f}s, speedup {speedup:.2f}"
            )

    out.write(f"# N\t{db.num_transactions}\n")
    out.write(f"# items\t{db.num_items}\n")
    out.write(f"# alpha\t{format_float(config.alpha)}\n")
    out.write(f"# transport\t{config.transport_kind}\n")
    _write_row(out, BENCH_COLUMNS)
    for row in rows:
        _write_row(out, row)
    for mode, workers, run, metrics in runs:
        out.write("\n")
        format_metrics_table(
            out,
            metrics,
            waves=run.enumeration.waves,
            metadata=[
                ("mode", mode),
                ("workers", workers),
                ("expansions_per_probe", run.enumeration.expansions_per_probe),
            ],
        )


def fuzz_cases(seed: int, count: int) -> Iterator[tuple[str, TransactionDatabase, float]]:
    """Seeded random databases small enough for the exhaustive oracle."""
    for case in range(count):
        sequence = np.random.SeedSequence([seed, case])
        rng = np.random.default_rng(sequence)
        num_items = int(rng.integers(1, FUZZ_MAX_ITEMS + 1))
        db = generate_database(
            num_items,
            int(rng.integers(2, FUZZ_MAX_TRANSACTIONS + 1)),
            density=float(rng.uniform(0.15, 0.6)),
            planted_size=int(rng.integers(0, min(3, num_items) + 1)),
            seed=int(sequence.generate_state(1)[0]),
        )
        yield f"fuzz-{case}", db, FUZZ_ALPHAS[case % len(FUZZ_ALPHAS)]


def _verify_cases(config: RunConfig) -> Iterator[tuple[str, TransactionDatabase, float]]:
    if config.fuzz is not None:
        yield from fuzz_cases(config.seed, config.fuzz)
        return
    db = load_input(config)
    if db.num_items > MAX_ORACLE_ITEMS:
        raise DatasetError(
            f"verify is limited to {MAX_ORACLE_ITEMS} items, database has {db.num_items}",
            path=config.transactions,
        )
    name = config.transactions.name if config.transactions else str(config.synthetic)
    yield name, db, config.alpha


def cmd_verify(config: RunConfig, out: TextIO) -> None:
    """
    Compare the engine against the exhaustive oracle.

    Raises:
        DatasetError: The database has more items than the oracle allows
        VerificationError: On the first differing quantity or record
    """
    procedure = LampProcedure(config.runtime())
    _write_row(out, VERIFY_COLUMNS)
    checked = 0
    for name, db, alpha in _verify_cases(config):
        result = procedure.run(db, alpha).result
        oracle = exhaustive_lamp(db, alpha)
        row = (
            name,
            db.num_items,
            db.num_transactions,
            format_float(alpha),
            result.final_lambda,
            result.correction_factor,
            len(result.patterns),
        )
        try:
            compare_with_oracle(result, oracle)
        except VerificationError as e:
            _write_row(out, (*row, f"mismatch:{e.field}"))
            CommandLogger.logger().error(f"{name}: {e}")
            raise
        _write_row(out, (*row, "ok"))
        checked += 1
    CommandLogger.logger().info(f"{checked} databases match the oracle")


COMMANDS: dict[Command, Callable[[RunConfig, TextIO], None]] = {
    Command.MINE: cmd_mine,
    Command.LAMP: cmd_lamp,
    Command.SIM: cmd_sim,
    Command.BENCH: cmd_bench,
    Command.VERIFY: cmd_verify,
}


def run_command(config: RunConfig) -> None:
    with open_output(config.out) as out:
        COMMANDS[config.command](config, out)
