"""
This module provides the support-increase bookkeeping: per-support closed-set
counters and the threshold lambda that rises while the correction condition
f(lambda - 1) > alpha / CS(lambda) holds.
"""

from collections.abc import Mapping

import numpy as np

from patternpype.logger import LoggerMixin
from patternpype.stats.context import StatContext, lamp_condition_holds


class LampState(LoggerMixin):
    """
    Counters of closed sets by exact support and the current threshold lambda.

    CS(lambda) is the suffix sum of the counters from lambda upwards; it is kept
    incrementally so a record costs O(1) and each lambda step costs O(1).
    The state is single-writer; parallel runs give each worker its own
    instance and reconcile through :meth:`merge_counters` / :meth:`adopt_lambda`.

    Attributes:
        ctx (StatContext): Marginals used by the threshold condition
        alpha (float): Target family-wise error rate
        counters (ndarray): ``counters[s]`` = closed sets with support exactly s
        history (list[int]): Every lambda value taken, starting with the initial one
    """

    def __init__(self, ctx: StatContext, alpha: float, initial_lambda: int = 1):
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {alpha}")
        if not 1 <= initial_lambda <= ctx.n_total + 1:
            raise ValueError(f"initial lambda {initial_lambda} out of range")
        self.ctx = ctx
        self.alpha = alpha
        self.counters = np.zeros(ctx.n_total + 2, dtype=np.int64)
        self.history: list[int] = [initial_lambda]
        self._lambda = initial_lambda
        self._above = 0
        self._deltas: dict[int, int] = {}

    @property
    def lambda_(self) -> int:
        return self._lambda

    def closed_set_count(self, lam: int | None = None) -> int:
        """CS(lam): closed sets recorded with support >= lam (default: current)."""
        if lam is None or lam == self._lambda:
            return self._above
        return int(self.counters[max(lam, 0) :].sum())

    def record_closed_set(self, support: int) -> int:
        """Count one closed set and return the possibly advanced lambda."""
        if not 1 <= support <= self.ctx.n_total:
            raise ValueError(f"Support {support} outside [1, {self.ctx.n_total}]")
        self.counters[support] += 1
        self._deltas[support] = self._deltas.get(support, 0) + 1
        if support >= self._lambda:
            self._above += 1
        return self._advance()

    def merge_counters(self, deltas: Mapping[int, int]) -> int:
        """Add counters gathered elsewhere and advance lambda over the merged totals."""
        for support, count in deltas.items():
            if count == 0:
                continue
            self.counters[support] += count
            if support >= self._lambda:
                self._above += count
        return self._advance()

    def adopt_lambda(self, value: int) -> int:
        """Take ``max(local, value)``; a lower value is ignored."""
        if value > self._lambda:
            self._above -= int(self.counters[self._lambda : value].sum())
            self._set_lambda(value)
        return self._advance()

    def take_deltas(self) -> dict[int, int]:
        """Counters recorded since the previous call, then reset them."""
        deltas, self._deltas = self._deltas, {}
        return deltas

    def _advance(self) -> int:
        start = self._lambda
        lam = start
        while lam <= self.ctx.n_total and lamp_condition_holds(
            self.ctx, lam, self._above, self.alpha
        ):
            self._above -= int(self.counters[lam])
            lam += 1
        if lam != start:
            self._set_lambda(lam)
        return lam

    def _set_lambda(self, value: int) -> None:
        self.logger().debug(f"lambda {self._lambda} -> {value} (CS={self._above})")
        self._lambda = value
        self.history.append(value)


def min_support_from(final_lambda: int) -> int:
    """The mining threshold is one below the last lambda (never below 1)."""
    return max(1, final_lambda - 1)
