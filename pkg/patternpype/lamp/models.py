from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from patternpype.dataset.models import PatternSupport


class ClosedPattern(BaseModel):
    """
    A closed itemset found by the enumeration phase.

    Attributes:
        itemset (tuple[int, ...]): Sorted item ids
        items (tuple[str, ...]): Item names in the same order
        support (PatternSupport): x(I) and n(I)
    """

    model_config = ConfigDict(frozen=True)

    itemset: tuple[int, ...]
    items: tuple[str, ...]
    support: PatternSupport

    @property
    def sort_key(self) -> tuple[str, ...]:
        return self.items


class SignificantPattern(BaseModel):
    """
    A closed itemset whose Fisher P-value passed the corrected level.

    Attributes:
        itemset (tuple[int, ...]): Sorted item ids
        items (tuple[str, ...]): Item names
        support (PatternSupport): x(I) and n(I)
        p_value (float): One-sided Fisher exact P-value
    """

    model_config = ConfigDict(frozen=True)

    itemset: tuple[int, ...]
    items: tuple[str, ...]
    support: PatternSupport
    p_value: float = Field(ge=0.0, le=1.0)

    @property
    def sort_key(self) -> tuple[float, tuple[str, ...]]:
        return (self.p_value, self.items)


class LampResult(BaseModel):
    """
    Outcome of the three-phase procedure.

    Attributes:
        n_total (int): N
        n_positive (int): N_pos
        alpha (float): Target FWER
        final_lambda (int): Last lambda of the support-increase phase
        min_support (int): final_lambda - 1, floored at 1
        correction_factor (int): CS(min_support), closed sets tested
        delta (float): Corrected significance level alpha / CS
        closed_patterns (list[ClosedPattern]): Every closed set with support
            >= min_support, sorted by item names
        patterns (list[SignificantPattern]): Those with P <= delta, sorted by
            (P-value, item names)
    """

    n_total: int
    n_positive: int
    alpha: float
    final_lambda: int
    min_support: int
    correction_factor: int
    delta: float
    closed_patterns: list[ClosedPattern] = Field(default_factory=list)
    patterns: list[SignificantPattern] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_result(self) -> Self:
        if self.correction_factor != len(self.closed_patterns):
            raise ValueError("Correction factor must equal the closed-set count")
        if any(p.p_value > self.delta for p in self.patterns):
            raise ValueError("A reported pattern exceeds the corrected level")
        return self
