"""
This module provides the one-sided Fisher exact test, Tarone's minimum
achievable P-value and the support-threshold condition used to size the
multiple-testing correction.

Every binomial coefficient is evaluated in log space from a precomputed
``ln(k!)`` table, so databases with ~10^5 transactions stay finite. Tail sums
are formed relative to their largest term and added with ``math.fsum``, whose
correctly rounded result keeps P monotone in the lower summation bound.
"""

import math
from typing import Any, Self

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator
from scipy.special import gammaln

from patternpype.dataset.models import PatternSupport, TransactionDatabase
from patternpype.exceptions import StatisticsError


class StatContext(BaseModel):
    """
    Marginals of the 2x2 tables tested for every pattern.

    Attributes:
        n_total (int): N, number of transactions
        n_positive (int): N_pos, number of positive transactions
        log_factorials (ndarray): ln(k!) for k in [0, N]
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n_total: int = Field(gt=0)
    n_positive: int = Field(ge=0)
    log_factorials: npt.NDArray[np.float64]

    _tarone: dict[int, float] = PrivateAttr(default_factory=dict)

    @model_validator(mode="before")
    @classmethod
    def build_table(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("log_factorials") is None:
            n_total = int(data.get("n_total", 0))
            data = dict(data)
            data["log_factorials"] = gammaln(np.arange(max(n_total, 0) + 1) + 1.0)
        return data

    @model_validator(mode="after")
    def validate_context(self) -> Self:
        if self.n_positive > self.n_total:
            raise ValueError("n_positive cannot exceed n_total")
        if self.log_factorials.shape != (self.n_total + 1,):
            raise ValueError("log_factorials must cover [0, n_total]")
        self.log_factorials.setflags(write=False)
        return self

    @classmethod
    def from_database(cls, db: TransactionDatabase) -> "StatContext":
        return cls(n_total=db.num_transactions, n_positive=db.num_positive)

    @property
    def n_negative(self) -> int:
        return self.n_total - self.n_positive


def log_binomial(ctx: StatContext, n: int, k: int) -> float:
    """ln C(n, k) for 0 <= k <= n <= N."""
    table = ctx.log_factorials
    return float(table[n] - table[k] - table[n - k])


def _check_support(ctx: StatContext, x: int, n: int) -> None:
    if not 0 <= x <= ctx.n_total:
        raise StatisticsError(f"Support {x} outside [0, {ctx.n_total}]")
    if n < 0 or n > x or n > ctx.n_positive or x - n > ctx.n_negative:
        raise StatisticsError(
            f"Invalid contingency: x={x}, n={n} with N={ctx.n_total}, "
            f"N_pos={ctx.n_positive}"
        )


def _log_terms(ctx: StatContext, x: int, lo: int, hi: int) -> npt.NDArray[np.float64]:
    """ln of the hypergeometric probabilities for n_i in [lo, hi]."""
    table = ctx.log_factorials
    ni = np.arange(lo, hi + 1)
    n_pos, n_neg, n = ctx.n_positive, ctx.n_negative, ctx.n_total
    log_num = (
        table[n_pos]
        - table[ni]
        - table[n_pos - ni]
        + table[n_neg]
        - table[x - ni]
        - table[n_neg - x + ni]
    )
    log_den = table[n] - table[x] - table[n - x]
    return np.asarray(log_num - log_den, dtype=np.float64)


def _tail(ctx: StatContext, x: int, lo: int, hi: int) -> float:
    terms = _log_terms(ctx, x, lo, hi)
    peak = float(terms.max())
    total = math.fsum(np.exp(terms - peak).tolist())
    return min(1.0, max(0.0, math.exp(peak) * total))


def fisher_p(ctx: StatContext, support: PatternSupport) -> float:
    """
    One-sided Fisher exact P-value of an itemset with x(I)=total, n(I)=positive.

    P(I) = sum_{n_i = n(I)}^{min(x(I), N_pos)} C(N_pos, n_i) C(N - N_pos, x(I) - n_i) / C(N, x(I))

    Raises:
        StatisticsError: If the implied 2x2 table has a negative cell
    """
    x, n = support.total, support.positive
    _check_support(ctx, x, n)
    hi = min(x, ctx.n_positive)
    floor = max(0, x - ctx.n_negative)
    if n <= floor:
        return 1.0
    return _tail(ctx, x, n, hi)


def tarone_bound(ctx: StatContext, x: int) -> float:
    """
    Minimum achievable P-value at support x: f(x) = C(N_pos, x) / C(N, x).

    Evaluated through the same tail routine as :func:`fisher_p` at its most
    extreme table, so the bound never exceeds an attainable P-value because of
    rounding.

    Raises:
        StatisticsError: If x is outside [0, N]
    """
    if not 0 <= x <= ctx.n_total:
        raise StatisticsError(f"Support {x} outside [0, {ctx.n_total}]")
    cached = ctx._tarone.get(x)
    if cached is not None:
        return cached
    if x == 0:
        value = 1.0
    elif x > ctx.n_positive:
        value = 0.0
    else:
        value = fisher_p(ctx, PatternSupport(total=x, positive=x))
    ctx._tarone[x] = value
    return value


def lamp_condition_holds(
    ctx: StatContext, lam: int, cs_count: int, alpha: float
) -> bool:
    """
    Whether f(lam - 1) > alpha / cs_count.

    With no closed sets there is no hypothesis to correct for and the
    condition is false.
    """
    if lam < 1:
        raise StatisticsError(f"lambda must be >= 1, got {lam}")
    if cs_count < 0:
        raise StatisticsError(f"closed-set count must be >= 0, got {cs_count}")
    if not 0.0 < alpha < 1.0:
        raise StatisticsError(f"alpha must be in (0, 1), got {alpha}")
    if cs_count == 0:
        return False
    return tarone_bound(ctx, lam - 1) > alpha / cs_count


def corrected_threshold(alpha: float, cs_count: int) -> float:
    """Adjusted significance level delta = alpha / CS."""
    if cs_count < 1:
        raise StatisticsError("No correction factor without closed sets")
    return alpha / cs_count
