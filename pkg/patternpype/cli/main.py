"""
The ``patternpype`` executable.

Exit statuses: 0 success, 1 usage error, 2 data error, 3 invariant or
verification failure.
"""

import argparse
import sys
from collections.abc import Sequence
from typing import NoReturn

from pydantic import ValidationError

from patternpype.cli.commands import run_command
from patternpype.cli.configuration import Command, RunConfig, Workload
from patternpype.exceptions import (
    DatasetError,
    InvariantViolation,
    PatternpypeError,
    StatisticsError,
    VerificationError,
)
from patternpype.logger import configure_logging
from patternpype.runtime.configuration import FaultKind, TransportKind

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_FAILURE = 3

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class UsageError(PatternpypeError):
    """The command line could not be parsed."""


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _worker_counts(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated integers, got {text!r}"
        ) from None


def _add_common(parser: argparse.ArgumentParser, command: Command) -> None:
    data = parser.add_argument_group("data")
    data.add_argument("--transactions", type=str, help="transactions file or combined CSV")
    data.add_argument("--labels", type=str, help="labels file, one 0/1 per line")
    if command in (Command.SIM, Command.BENCH, Command.VERIFY):
        data.add_argument(
            "--synthetic",
            choices=[w.value for w in Workload],
            help="use a seeded generated database instead of files",
        )
        data.add_argument("--synthetic-items", type=int)
        data.add_argument("--synthetic-transactions", type=int)

    runtime = parser.add_argument_group("runtime")
    runtime.add_argument("--workers", type=int, default=1, help="worker count P")
    runtime.add_argument(
        "--transport", choices=[t.value for t in TransportKind], help="execution backend"
    )
    runtime.add_argument("--seed", type=int, default=0)
    runtime.add_argument("--lifeline-l", type=int, default=2, help="lifeline hypercube side")
    runtime.add_argument("--steal-w", type=int, default=1, help="random steal trials")
    runtime.add_argument("--probe-ms", type=float, default=1.0, help="probe interval target")
    runtime.add_argument("--naive", action="store_true", help="no stealing after the split")
    runtime.add_argument("--max-delay", type=int, default=4, help="simulated delay bound")

    parser.add_argument("--out", type=str, help="output file (default stdout)")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default="WARNING")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="patternpype",
        description="Parallel closed itemset mining and significant pattern discovery",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    mine = subparsers.add_parser("mine", help="list closed itemsets above a support")
    _add_common(mine, Command.MINE)
    mine.add_argument("--min-support", type=int, required=True)

    lamp = subparsers.add_parser("lamp", help="significant patterns with FWER control")
    _add_common(lamp, Command.LAMP)
    lamp.add_argument("--alpha", type=float, default=0.05)

    sim = subparsers.add_parser("sim", help="deterministic protocol simulation")
    _add_common(sim, Command.SIM)
    sim.add_argument("--alpha", type=float, default=0.05)
    sim.add_argument("--sweep", type=int, default=1, help="number of seeds from --seed")
    sim.add_argument("--trace", type=str, help="write the message trace here")
    sim.add_argument(
        "--fault", choices=[f.value for f in FaultKind], default=FaultKind.NONE.value
    )

    bench = subparsers.add_parser("bench", help="time the search across worker counts")
    _add_common(bench, Command.BENCH)
    bench.add_argument("--alpha", type=float, default=0.05)
    bench.add_argument("--workers-list", type=_worker_counts, default=(1, 2, 4, 8))

    verify = subparsers.add_parser("verify", help="compare against the exhaustive oracle")
    _add_common(verify, Command.VERIFY)
    verify.add_argument("--alpha", type=float, default=0.05)
    verify.add_argument("--fuzz", type=int, help="check N seeded random databases")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {
        "command": args.command,
        "transactions": args.transactions,
        "labels": args.labels,
        "workers": args.workers,
        "transport": args.transport,
        "seed": args.seed,
        "lifeline_length": args.lifeline_l,
        "steal_trials": args.steal_w,
        "probe_ms": args.probe_ms,
        "naive": args.naive,
        "max_delay": args.max_delay,
        "out": args.out,
    }
    optional = (
        "alpha",
        "min_support",
        "sweep",
        "trace",
        "fault",
        "workers_list",
        "fuzz",
        "synthetic",
        "synthetic_items",
        "synthetic_transactions",
    )
    for name in optional:
        value = getattr(args, name, None)
        if value is not None:
            values[name] = value
    return RunConfig.model_validate(values)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = config_from_args(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        print(f"patternpype: invalid arguments\n{e}", file=sys.stderr)
        return EXIT_USAGE

    configure_logging(args.log_level)
    try:
        run_command(config)
    except (InvariantViolation, VerificationError) as e:
        print(f"patternpype: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except (DatasetError, StatisticsError, OSError) as e:
        print(f"patternpype: {e}", file=sys.stderr)
        return EXIT_DATA
    except PatternpypeError as e:
        print(f"patternpype: {e}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
