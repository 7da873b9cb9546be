"""
The three LAMP phases on top of the parallel runtime.

1. Support increase: a search that prunes with a rising lambda and yields the
   final lambda once every worker has terminated.
2. Enumeration of every closed set with support >= lambda - 1; their number is
   the correction factor CS.
3. Extraction: Fisher's test on each enumerated set against delta = alpha / CS.
"""

from collections.abc import Iterable

from pydantic import BaseModel

from patternpype.dataset.models import PatternSupport, TransactionDatabase
from patternpype.exceptions import InvariantViolation
from patternpype.lamp.models import ClosedPattern, LampResult, SignificantPattern
from patternpype.lamp.state import LampState, min_support_from
from patternpype.logger import LoggerMixin
from patternpype.mining.search import search_closed
from patternpype.runtime.configuration import RuntimeConfiguration
from patternpype.runtime.engine import SearchEngine
from patternpype.runtime.models import PhaseOutcome, PhaseSpec, RetainedNode
from patternpype.stats.context import StatContext, corrected_threshold, fisher_p


class LampRun(BaseModel):
    """A LAMP result together with the runtime outcomes of its two search phases."""

    result: LampResult
    support_increase: PhaseOutcome
    enumeration: PhaseOutcome


def support_increase_sequential(
    db: TransactionDatabase, alpha: float, prune: bool = True
) -> LampState:
    """
    Single-process support increase.

    With ``prune`` the search skips every subtree whose support fell below the
    current lambda; without it every closed set is counted. Both yield the same
    final lambda.
    """
    state = LampState(StatContext.from_database(db), alpha)
    threshold = (lambda: state.lambda_) if prune else 1
    search_closed(db, threshold, lambda node: state.record_closed_set(node.support))
    return state


def closed_patterns(
    db: TransactionDatabase, retained: Iterable[RetainedNode]
) -> list[ClosedPattern]:
    patterns = [
        ClosedPattern(
            itemset=node.itemset,
            items=db.names_of(node.itemset),
            support=PatternSupport(total=node.support, positive=node.positive),
        )
        for node in retained
    ]
    return sorted(patterns, key=lambda p: p.sort_key)


def extract_significant(
    db: TransactionDatabase,
    alpha: float,
    final_lambda: int,
    min_support: int,
    closed: list[ClosedPattern],
) -> LampResult:
    """Test every enumerated closed set at the corrected level alpha / CS."""
    ctx = StatContext.from_database(db)
    correction = len(closed)
    delta = corrected_threshold(alpha, correction) if correction else alpha
    significant = []
    for pattern in closed:
        p_value = fisher_p(ctx, pattern.support)
        if p_value <= delta:
            significant.append(
                SignificantPattern(
                    itemset=pattern.itemset,
                    items=pattern.items,
                    support=pattern.support,
                    p_value=p_value,
                )
            )
    return LampResult(
        n_total=db.num_transactions,
        n_positive=db.num_positive,
        alpha=alpha,
        final_lambda=final_lambda,
        min_support=min_support,
        correction_factor=correction,
        delta=delta,
        closed_patterns=closed,
        patterns=sorted(significant, key=lambda p: p.sort_key),
    )


class LampProcedure(LoggerMixin):
    """
    Runs the three phases with one runtime configuration.

    Attributes:
        engine (SearchEngine): Runtime used by both search phases
    """

    def __init__(self, configuration: RuntimeConfiguration | None = None):
        self.engine = SearchEngine(configuration)

    def run(self, db: TransactionDatabase, alpha: float) -> LampRun:
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {alpha}")

        first = self.engine.run_phase(db, PhaseSpec.support_increase(alpha))
        min_support = min_support_from(first.final_lambda)
        self.logger().info(
            f"Support increase finished at lambda={first.final_lambda}, "
            f"mining at min support {min_support}"
        )

        second = self.engine.run_phase(db, PhaseSpec.enumeration(min_support))
        closed = closed_patterns(db, second.retained)
        if len(closed) != second.closed_set_count:
            raise InvariantViolation(
                "aggregation",
                f"{len(closed)} closed sets retained but {second.closed_set_count} "
                "counted by the termination waves",
                self.engine.configuration.seed,
            )

        result = extract_significant(db, alpha, first.final_lambda, min_support, closed)
        self.logger().info(
            f"CS={result.correction_factor}, delta={result.delta:.3g}, "
            f"{len(result.patterns)} significant patterns"
        )
        return LampRun(result=result, support_increase=first, enumeration=second)


def run_lamp(
    db: TransactionDatabase,
    alpha: float,
    configuration: RuntimeConfiguration | None = None,
) -> LampResult:
    return LampProcedure(configuration).run(db, alpha).result


def mine_closed(
    db: TransactionDatabase,
    min_support: int,
    configuration: RuntimeConfiguration | None = None,
) -> tuple[list[ClosedPattern], PhaseOutcome]:
    """Parallel enumeration of the closed sets with support >= ``min_support``."""
    outcome = SearchEngine(configuration).run_phase(
        db, PhaseSpec.enumeration(min_support)
    )
    return closed_patterns(db, outcome.retained), outcome
