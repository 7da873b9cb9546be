"""
This package provides the LAMP bookkeeping (support-increase state), the result
models, the exhaustive oracle and the TSV report writers.

The parallel three-phase driver lives in :mod:`patternpype.lamp.procedure`; it
is not re-exported here because it depends on the runtime, which itself uses
:class:`LampState`.
"""

from .models import ClosedPattern, LampResult, SignificantPattern
from .oracle import (
    MAX_ORACLE_ITEMS,
    OracleResult,
    compare_with_oracle,
    exhaustive_closed_sets,
    exhaustive_lamp,
)
from .report import format_float, write_closed_table, write_lamp_report
from .state import LampState, min_support_from

__all__ = [
    "LampState",
    "min_support_from",
    "ClosedPattern",
    "SignificantPattern",
    "LampResult",
    "OracleResult",
    "MAX_ORACLE_ITEMS",
    "exhaustive_closed_sets",
    "exhaustive_lamp",
    "compare_with_oracle",
    "format_float",
    "write_lamp_report",
    "write_closed_table",
]
