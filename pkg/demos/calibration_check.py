"""Compare B and D under uniform and skewed symbols against their chi-square laws."""

from uhfpredict.calibration import calibrate

for kind, probs in (("B", None), ("B", [2 / 3, 1 / 3]), ("D", [2 / 3, 1 / 3])):
    r = calibrate(kind, 2, 10_000, probs, N=1000, seed=0)
    label = "uniform" if probs is None else "skewed"
    print(f"{kind} {label:>7}: df={r.df} KS={r.ks_distance:.4f} bound={r.ks_bound:.4f} "
          f"slope={r.qq_slope:.3f} passed={r.passed}")
