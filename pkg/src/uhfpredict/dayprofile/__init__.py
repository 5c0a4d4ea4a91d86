"""Per-day characteristics and the predictable-vs-unpredictable comparison."""

from .features import (
    CHARACTERISTICS,
    DayProfile,
    PairAnalysis,
    acf_lag1,
    pair_analysis,
    profile_day,
    repeat_probability,
)
from .groups import CharacteristicRow, GroupComparison, compare_groups, compare_values, stars, welch_pvalue
from .jumps import JumpResult, detect_jumps, gumbel_threshold, lm_statistics, preaverage
from .tdist import TFit, fit_student_t, t_loglik

__all__ = [
    "CHARACTERISTICS",
    "CharacteristicRow",
    "DayProfile",
    "GroupComparison",
    "JumpResult",
    "PairAnalysis",
    "TFit",
    "acf_lag1",
    "compare_groups",
    "compare_values",
    "detect_jumps",
    "fit_student_t",
    "gumbel_threshold",
    "lm_statistics",
    "pair_analysis",
    "preaverage",
    "profile_day",
    "repeat_probability",
    "stars",
    "t_loglik",
    "welch_pvalue",
]
