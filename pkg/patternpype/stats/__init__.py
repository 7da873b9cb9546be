"""
This package provides the Fisher exact test, Tarone's bound and the support
threshold condition that drives the multiple-testing correction.
"""

from .context import (
    StatContext,
    corrected_threshold,
    fisher_p,
    lamp_condition_holds,
    log_binomial,
    tarone_bound,
)

__all__ = [
    "StatContext",
    "fisher_p",
    "tarone_bound",
    "lamp_condition_holds",
    "corrected_threshold",
    "log_binomial",
]
