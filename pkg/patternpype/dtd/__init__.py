"""
This package provides the distributed termination detection: the per-worker
clock/balance state and the tree waves that also aggregate closed-set counters
and broadcast lambda.
"""

from .local import (
    CLOCK_MODULUS,
    DtdLocal,
    is_newer,
    newest,
    next_wave_id,
    tree_children,
    tree_parent,
)
from .wave import (
    WaveCommand,
    WaveOutcome,
    WaveParticipant,
    WaveReport,
    WaveRoot,
    WaveStatistics,
    aggregate_lambda,
)

__all__ = [
    "CLOCK_MODULUS",
    "DtdLocal",
    "is_newer",
    "newest",
    "next_wave_id",
    "tree_parent",
    "tree_children",
    "WaveCommand",
    "WaveOutcome",
    "WaveParticipant",
    "WaveReport",
    "WaveRoot",
    "WaveStatistics",
    "aggregate_lambda",
]
