import numpy as np
import pytest

from uhfpredict.sim import (
    LambdaModelConfig,
    OdModelConfig,
    SimOutput,
    TsModelConfig,
    config_from_dict,
    impact_path,
    is_non_increasing,
    pareto_sizes,
    predictability_decay,
    propagator,
    run_ensemble,
    sign_predictable,
    simulate_lambda,
    simulate_od,
    simulate_ts,
    smoothed,
)


def sign_acf(x, lag):
    x = np.asarray(x, dtype=float) - np.mean(x)
    return float(x[lag:] @ x[:-lag] / (x @ x))


class TestLambda:
    def test_shape_and_determinism(self):
        cfg = LambdaModelConfig(length=5000, seed=4)
        a, b = simulate_lambda(cfg), simulate_lambda(cfg)
        assert a.signs.shape == (5000,) and set(np.unique(a.signs)) <= {-1, 1}
        assert np.array_equal(a.signs, b.signs)
        assert a.prices is None

    def test_pareto_tail(self):
        sizes = pareto_sizes(np.random.default_rng(0), 1.63, 200_000)
        assert sizes.min() == 1
        for m in (1, 2, 10):
            assert np.mean(sizes >= m) == pytest.approx(m**-1.63, rel=0.05)

    def test_completed_size_tail_exponent(self):
        out = simulate_lambda(LambdaModelConfig(length=1_000_000, seed=8))
        sizes = out.extra["completed_sizes"]
        # discrete Pareto: P(S >= m) = m**-alpha, so the log-log survival slope is -alpha
        m = np.arange(2, 60)
        surv = np.array([np.mean(sizes >= v) for v in m])
        slope = np.polyfit(np.log(m), np.log(surv), 1)[0]
        assert -slope == pytest.approx(1.63, abs=0.15)

    def test_long_memory(self):
        signs = simulate_lambda(LambdaModelConfig(length=100_000, seed=1)).signs
        acf = [sign_acf(signs, lag) for lag in (1, 10, 50)]
        assert acf[0] > acf[1] > acf[2] > 0

    def test_unit_volumes_give_iid_signs(self):
        signs = simulate_lambda(LambdaModelConfig(length=50_000, seed=2, unit_volumes=True)).signs
        assert abs(sign_acf(signs, 1)) < 4 / np.sqrt(signs.size)

    def test_config_validation(self):
        for bad in (dict(alpha=1.0), dict(lam=1.5), dict(n_orders=0)):
            with pytest.raises(ValueError):
                LambdaModelConfig(**bad)


class TestTs:
    def test_propagator_values(self):
        g = propagator([0, 1, 80])
        assert g[0] == pytest.approx(2.8e-3 / 20**0.42)
        assert g[2] == pytest.approx(2.8e-3 / 100**0.42)
        assert np.all(np.diff(g) < 0)

    def test_impact_path_matches_direct_sum(self):
        rng = np.random.default_rng(5)
        eps = rng.choice([-1, 1], 300)
        lv = rng.normal(5.5, 1.8, 300)
        cfg = TsModelConfig()
        direct = np.array([sum(propagator(t - s, cfg) * eps[s] * lv[s] for s in range(t + 1)) for t in range(300)])
        assert np.allclose(impact_path(eps, lv, cfg), direct, rtol=1e-9, atol=1e-12)

    def test_single_impulse_reproduces_propagator(self):
        # one buy at t=0 with v = e (ln v = 1), nothing after, no noise
        n = 500
        eps = np.zeros(n)
        eps[0] = 1
        path = impact_path(eps, np.ones(n))
        assert np.allclose(path, propagator(np.arange(n)), rtol=1e-10, atol=0)

    def test_determinism_and_positivity(self):
        cfg = TsModelConfig(length=3000, seed=9)
        a, b = simulate_ts(cfg), simulate_ts(cfg)
        assert np.array_equal(a.prices, b.prices) and np.all(a.prices > 0)

    def test_noise_switch(self):
        # same seed: the runs share signs and volumes and differ only by the noise term
        base = np.log(simulate_ts(TsModelConfig(length=20_000, seed=1, noise_sd=0.0)).prices)
        level = np.log(simulate_ts(TsModelConfig(length=20_000, seed=1)).prices) - base
        walk = np.log(simulate_ts(TsModelConfig(length=20_000, seed=1, cumulative_noise=True)).prices) - base
        assert np.std(level) == pytest.approx(0.01, rel=0.05)
        assert np.allclose(np.cumsum(level), walk, atol=1e-9)


class TestOd:
    def test_reverts_to_fundamental(self):
        cfg = OdModelConfig(length=5, seed=0, initial_price=1010, chartist_weight=0, noise_weight=0, initial_spread=0.02)
        prices = simulate_od(cfg).prices
        assert np.all(np.diff(prices) <= 0) and prices[-1] < 1010

    def test_determinism(self):
        cfg = OdModelConfig(length=2000, seed=3)
        a, b = simulate_od(cfg), simulate_od(cfg)
        assert np.array_equal(a.prices, b.prices) and np.array_equal(a.signs, b.signs)
        # prices sit on the tick grid
        assert np.allclose(np.round(a.prices / 0.01) * 0.01, a.prices)

    def test_stall_is_reported(self):
        cfg = OdModelConfig(length=10, seed=0, fundamentalist_weight=0, chartist_weight=0, noise_sd=0.0,
                            initial_depth=0, max_idle_steps=50)
        with pytest.raises(RuntimeError, match="no trade"):
            simulate_od(cfg)

    def test_validation(self):
        with pytest.raises(ValueError):
            OdModelConfig(fundamentalist_weight=0, chartist_weight=0, noise_weight=0)


def test_config_from_dict_rejects_unknown():
    with pytest.raises(ValueError, match="unknown"):
        config_from_dict(LambdaModelConfig, {"length": 10, "lamda": 0.3})


def test_csv_roundtrip(tmp_path):
    out = SimOutput(np.array([1, -1, 1], dtype=np.int8), np.array([1.0, 0.1 + 0.2, 3.5]))
    out.write_csv(tmp_path / "x.csv")
    back = SimOutput.read_csv(tmp_path / "x.csv")
    assert np.array_equal(back.signs, out.signs) and np.array_equal(back.prices, out.prices)


def test_ensemble_seeds_are_distinct():
    ens = run_ensemble(simulate_lambda, LambdaModelConfig(length=500), 3, seed=1)
    assert not np.array_equal(ens[0].signs, ens[1].signs)
    again = run_ensemble(simulate_lambda, LambdaModelConfig(length=500), 3, seed=1)
    assert all(np.array_equal(a.signs, b.signs) for a, b in zip(ens, again))


def test_decay_fractions():
    ens = run_ensemble(simulate_lambda, LambdaModelConfig(length=20_000), 4, seed=0)
    f = predictability_decay(ens, "sign-lag", [1, 2])
    assert f.shape == (2,) and f[0] == 1.0
    with pytest.raises(ValueError):
        predictability_decay(ens, "price-aggregation", [1])
    assert not sign_predictable(np.ones(3), 1)


def test_smoothing():
    assert np.allclose(smoothed([5, 4, 3, 2, 1, 0], 5), [3, 2])
    assert is_non_increasing([1, 1, 0.8, 0.9, 0.5, 0.4, 0.3], window=3)
    assert not is_non_increasing([1, 0, 0, 0, 1, 1], window=2)
