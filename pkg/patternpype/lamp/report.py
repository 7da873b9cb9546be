"""
TSV writers for mining and LAMP results.

Every table starts with ``#``-prefixed ``key<TAB>value`` metadata lines followed
by a single header row. Floats use a fixed format so that runs with different
worker counts produce byte-identical files.
"""

from collections.abc import Iterable, Sequence
from typing import TextIO

from patternpype.lamp.models import ClosedPattern, LampResult

ITEM_SEPARATOR = ";"
LAMP_COLUMNS = ("p_value", "support_total", "support_positive", "items")
CLOSED_COLUMNS = ("support_total", "support_positive", "items")


def format_float(value: float) -> str:
    return f"{value:.10g}"


def _write_metadata(out: TextIO, entries: Iterable[tuple[str, object]]) -> None:
    for key, value in entries:
        text = format_float(value) if isinstance(value, float) else str(value)
        out.write(f"# {key}\t{text}\n")


def _write_row(out: TextIO, cells: Sequence[object]) -> None:
    out.write("\t".join(str(c) for c in cells) + "\n")


def write_lamp_report(out: TextIO, result: LampResult) -> None:
    """Metadata block (N, N_pos, alpha, lambda, min support, CS, delta) and the
    significant patterns sorted by (P-value, item names)."""
    _write_metadata(
        out,
        [
            ("N", result.n_total),
            ("N_pos", result.n_positive),
            ("alpha", result.alpha),
            ("lambda", result.final_lambda),
            ("min_support", result.min_support),
            ("CS", result.correction_factor),
            ("delta", result.delta),
            ("significant", len(result.patterns)),
        ],
    )
    _write_row(out, LAMP_COLUMNS)
    for pattern in sorted(result.patterns, key=lambda p: p.sort_key):
        _write_row(
            out,
            (
                format_float(pattern.p_value),
                pattern.support.total,
                pattern.support.positive,
                ITEM_SEPARATOR.join(pattern.items),
            ),
        )


def write_closed_table(
    out: TextIO,
    patterns: Sequence[ClosedPattern],
    n_total: int,
    n_positive: int,
    min_support: int,
) -> None:
    _write_metadata(
        out,
        [
            ("N", n_total),
            ("N_pos", n_positive),
            ("min_support", min_support),
            ("closed_sets", len(patterns)),
        ],
    )
    _write_row(out, CLOSED_COLUMNS)
    for pattern in sorted(patterns, key=lambda p: p.sort_key):
        _write_row(
            out,
            (
                pattern.support.total,
                pattern.support.positive,
                ITEM_SEPARATOR.join(pattern.items),
            ),
        )
