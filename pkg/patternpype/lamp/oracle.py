"""
Exhaustive reference implementation used by ``verify`` and the test-suite.

Closed itemsets are in one-to-one correspondence with distinct covers, so the
oracle walks all 2^items subsets, collects their covers as Python integers and
closes each distinct cover. Lambda is then found by scanning 1, 2, ... until
the correction condition fails. Only sensible for small item counts.
"""

from pydantic import BaseModel

from patternpype.dataset.bitset import Bitset
from patternpype.dataset.models import PatternSupport, TransactionDatabase
from patternpype.exceptions import VerificationError
from patternpype.lamp.models import ClosedPattern, LampResult, SignificantPattern
from patternpype.lamp.state import min_support_from
from patternpype.stats.context import (
    StatContext,
    corrected_threshold,
    fisher_p,
    lamp_condition_holds,
)

MAX_ORACLE_ITEMS = 20


class OracleResult(BaseModel):
    final_lambda: int
    min_support: int
    correction_factor: int
    delta: float
    closed_patterns: list[ClosedPattern]
    patterns: list[SignificantPattern]


def _as_int(words: Bitset) -> int:
    return int.from_bytes(words.astype("<u8").tobytes(), "little")


def exhaustive_closed_sets(db: TransactionDatabase) -> list[ClosedPattern]:
    """All non-empty closed itemsets with support >= 1, sorted by item names."""
    m = db.num_items
    if m > MAX_ORACLE_ITEMS:
        raise ValueError(f"Oracle limited to {MAX_ORACLE_ITEMS} items, got {m}")
    item_covers = [_as_int(db.item_bitsets[i]) for i in range(m)]
    positive = _as_int(db.positive_bitset)
    everything = (1 << db.num_transactions) - 1

    covers = [everything] * (1 << m)
    for mask in range(1, 1 << m):
        low = mask & -mask
        covers[mask] = covers[mask ^ low] & item_covers[low.bit_length() - 1]

    patterns: list[ClosedPattern] = []
    for cover in set(covers):
        total = cover.bit_count()
        if total == 0:
            continue
        itemset = tuple(i for i in range(m) if item_covers[i] & cover == cover)
        if not itemset:
            continue
        patterns.append(
            ClosedPattern(
                itemset=itemset,
                items=db.names_of(itemset),
                support=PatternSupport(
                    total=total, positive=(cover & positive).bit_count()
                ),
            )
        )
    return sorted(patterns, key=lambda p: p.sort_key)


def exhaustive_lamp(db: TransactionDatabase, alpha: float) -> OracleResult:
    """Solve the threshold condition by scanning lambda and test every closed set."""
    ctx = StatContext.from_database(db)
    closed = exhaustive_closed_sets(db)
    supports = [p.support.total for p in closed]

    lam = 1
    while lam <= db.num_transactions and lamp_condition_holds(
        ctx, lam, sum(1 for s in supports if s >= lam), alpha
    ):
        lam += 1

    min_support = min_support_from(lam)
    tested = [p for p in closed if p.support.total >= min_support]
    delta = corrected_threshold(alpha, len(tested)) if tested else alpha
    significant = []
    for p in tested:
        p_value = fisher_p(ctx, p.support)
        if p_value <= delta:
            significant.append(
                SignificantPattern(
                    itemset=p.itemset, items=p.items, support=p.support, p_value=p_value
                )
            )
    return OracleResult(
        final_lambda=lam,
        min_support=min_support,
        correction_factor=len(tested),
        delta=delta,
        closed_patterns=tested,
        patterns=sorted(significant, key=lambda p: p.sort_key),
    )


def compare_with_oracle(result: LampResult, oracle: OracleResult) -> None:
    """
    Raise on the first quantity where an engine result differs from the oracle.

    Raises:
        VerificationError: Naming the differing field and both values
    """
    for name in ("final_lambda", "min_support", "correction_factor", "delta"):
        expected, actual = getattr(oracle, name), getattr(result, name)
        if expected != actual:
            raise VerificationError(name, expected, actual)
    closed_pairs = zip(oracle.closed_patterns, result.closed_patterns, strict=False)
    for expected_closed, actual_closed in closed_pairs:
        if expected_closed != actual_closed:
            raise VerificationError("closed_pattern", expected_closed, actual_closed)
    if len(oracle.closed_patterns) != len(result.closed_patterns):
        raise VerificationError(
            "closed_pattern_count",
            len(oracle.closed_patterns),
            len(result.closed_patterns),
        )
    for expected_pattern, actual_pattern in zip(
        oracle.patterns, result.patterns, strict=False
    ):
        if expected_pattern != actual_pattern:
            raise VerificationError("significant_pattern", expected_pattern, actual_pattern)
    if len(oracle.patterns) != len(result.patterns):
        raise VerificationError(
            "significant_pattern_count", len(oracle.patterns), len(result.patterns)
        )
