"""Tests of predictability for symbolized ultra-high-frequency price data.

Price returns are reduced to signs, counted in blocks, and tested for
independence of the next symbol from its history with an entropy-bias
statistic and a Neyman-Pearson likelihood-ratio statistic, both with
chi-square null laws.
"""

__version__ = "0.1.0"

from .localization import PartitionScan, scan_partitions, sidak_alpha
from .stattests import (
    DEFAULT_ALPHA,
    TestResult,
    chi2_survival,
    entropy_bias,
    entropy_estimate,
    kl_divergence,
    np_statistic,
)
from .symbolics import (
    BlockHistogram,
    SymbolSequence,
    aggregate_prices,
    block_length,
    count_blocks,
    symbolize_binary,
    symbolize_prices,
)

__all__ = [
    "DEFAULT_ALPHA",
    "BlockHistogram",
    "PartitionScan",
    "SymbolSequence",
    "TestResult",
    "aggregate_prices",
    "block_length",
    "chi2_survival",
    "count_blocks",
    "entropy_bias",
    "entropy_estimate",
    "kl_divergence",
    "np_statistic",
    "scan_partitions",
    "sidak_alpha",
    "symbolize_binary",
    "symbolize_prices",
]
