"""
This package provides the ``patternpype`` command line: argument parsing, the
validated run configuration and the five subcommands.
"""

from .commands import (
    cmd_bench,
    cmd_lamp,
    cmd_mine,
    cmd_sim,
    cmd_verify,
    fuzz_cases,
    load_input,
    run_command,
)
from .configuration import Command, RunConfig, Workload
from .main import build_parser, main

__all__ = [
    "Command",
    "RunConfig",
    "Workload",
    "cmd_mine",
    "cmd_lamp",
    "cmd_sim",
    "cmd_bench",
    "cmd_verify",
    "fuzz_cases",
    "load_input",
    "run_command",
    "build_parser",
    "main",
]
