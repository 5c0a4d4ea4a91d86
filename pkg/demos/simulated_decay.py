"""Fraction of predictable simulated runs against lag or aggregation level (small ensembles)."""

from uhfpredict.sim import (
    LambdaModelConfig,
    OdModelConfig,
    TsModelConfig,
    predictability_decay,
    run_ensemble,
    simulate_lambda,
    simulate_od,
    simulate_ts,
    smoothed,
)

levels = range(1, 51)
runs = [
    ("lambda signs", simulate_lambda, LambdaModelConfig(length=50_000), "sign-lag"),
    ("OD prices", simulate_od, OdModelConfig(length=50_000), "price-aggregation"),
    ("TS prices", simulate_ts, TsModelConfig(length=50_000), "price-aggregation"),
]
for name, fn, cfg, axis in runs:
    f = predictability_decay(run_ensemble(fn, cfg, 10, seed=3), axis, levels)
    sm = smoothed(f, 5)
    print(f"{name:>12}: level 1 {f[0]:.2f}, level 50 {f[-1]:.2f}, smoothed {sm[0]:.2f} -> {sm[-1]:.2f}")
