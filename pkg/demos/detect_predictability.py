"""Test an iid sequence and a persistent one, then locate the persistent half of a mixed day."""

import numpy as np

from uhfpredict.localization import scan_partitions
from uhfpredict.stattests import entropy_bias, np_statistic
from uhfpredict.symbolics import SymbolSequence, block_length

rng = np.random.default_rng(1)
n = 10_000
k = block_length(n, 2)

iid = SymbolSequence(rng.integers(0, 2, n), 2)
# repeat the previous symbol with probability 0.6
persistent = SymbolSequence(np.cumsum(rng.random(n) >= 0.6) % 2, 2)

for name, seq in (("iid", iid), ("persistent", persistent)):
    d, b = np_statistic(seq, k), entropy_bias(seq, k)
    print(f"{name:>10}: D={d.statistic:8.2f} p={d.p_value:.3g} predictable={d.predictable}  "
          f"B={b.statistic:8.2f} p={b.p_value:.3g}")

mixed = SymbolSequence(np.r_[iid.symbols[: n // 2], persistent.symbols[n // 2 :]], 2)
scan = scan_partitions(mixed, 0.01)
print(f"S_max={scan.S_max} best_S={scan.best_S} significant intervals={scan.significant_indices(scan.best_S)}")
