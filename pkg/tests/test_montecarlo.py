import math

import numpy as np
import pytest
from scipy import stats

from pillaireg.inference import BetaParams, beta_cdf, exact_p_value
from pillaireg.montecarlo import (
    SimConfig,
    calibrate,
    draw,
    ks_against_beta,
    ks_critical_value,
    replicate_effect,
    simulate_effects,
    simulate_null,
)

SEED = 20261019


@pytest.fixture(scope="module")
def null_50_3():
    return simulate_null(SimConfig(50, 3, 10_000, SEED))


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(4, 3, 10, 1)
    with pytest.raises(ValueError):
        SimConfig(10, 3, 0, 1)
    with pytest.raises(ValueError):
        SimConfig(10, 3, 10, -1)
    with pytest.raises(ValueError):
        SimConfig(10, 3, 10, 2**64)
    with pytest.raises(ValueError):
        SimConfig(10, 3, 10, 1, effect_strength=-0.5)


def test_single_replicate_in_range():
    for seed in (0, 1, 2**64 - 1):
        (value,) = simulate_null(SimConfig(12, 2, 1, seed))
        assert 0.0 <= value <= 1.0


def test_deterministic_and_order_free():
    cfg = SimConfig(15, 3, 40, 99)
    a = simulate_null(cfg)
    b = simulate_null(cfg)
    assert np.array_equal(a, b)
    reversed_order = [replicate_effect(cfg, i)[0] for i in reversed(range(40))][::-1]
    assert np.array_equal(a, np.array(reversed_order))
    assert np.array_equal(a, simulate_effects(cfg, workers=3).effects)


def test_replicates_use_distinct_streams():
    cfg = SimConfig(10, 2, 3, 5)
    x0, _ = draw(cfg, 0)
    x1, _ = draw(cfg, 1)
    x0b, _ = draw(cfg, 0, attempt=1)
    assert not np.array_equal(x0, x1)
    assert not np.array_equal(x0, x0b)


def test_simulate_null_rejects_alternative():
    with pytest.raises(ValueError):
        simulate_null(SimConfig(10, 2, 3, 5, effect_strength=1.0))


def test_null_mean(null_50_3):
    p = BetaParams.null(50, 3)
    assert p.mean == pytest.approx(3 / 49)
    assert abs(null_50_3.mean() - p.mean) <= 3 * math.sqrt(p.variance) / math.sqrt(null_50_3.size)


@pytest.mark.parametrize("q", [0.01, 0.05, 0.10])
def test_null_size(null_50_3, q):
    p = np.array([exact_p_value(e, 50, 3) for e in null_50_3])
    se = math.sqrt(q * (1 - q) / p.size)
    assert abs(np.mean(p <= q) - q) <= 3 * se


def test_ks_null_below_critical(null_50_3):
    d = ks_against_beta(null_50_3, BetaParams.null(50, 3))
    assert d < 1.63 / math.sqrt(10_000)


def test_ks_single_point_at_median():
    p = BetaParams(1.5, 23.0)
    med = stats.beta.ppf(0.5, 1.5, 23.0)
    assert beta_cdf(med, 1.5, 23.0) == pytest.approx(0.5, abs=1e-12)
    assert ks_against_beta(np.array([med]), p) == pytest.approx(0.5, abs=1e-12)


def test_ks_plug_in_quantiles():
    p = BetaParams(1.5, 23.0)
    m = 500
    qs = stats.beta.ppf((np.arange(1, m + 1) - 0.5) / m, p.alpha, p.beta)
    assert ks_against_beta(qs, p) <= 0.5 / m + 1e-10


def test_ks_critical_value():
    assert ks_critical_value(10_000) == pytest.approx(0.01628)


def test_calibrate_null_size():
    rep = calibrate(SimConfig(30, 2, 4_000, SEED))
    se = math.sqrt(0.05 * 0.95 / 4_000)
    assert abs(rep.rejection_rate_at_05_exact - 0.05) <= 3 * se
    assert 0 <= rep.ks_distance <= 1 and 0 <= rep.p_uniformity_ks <= 1
    assert rep.resampled == 0


def test_calibrate_strong_signal():
    rep = calibrate(SimConfig(50, 3, 500, SEED, effect_strength=5.0))
    assert rep.rejection_rate_at_05_exact > 0.99
    assert rep.rejection_rate_at_05_wald > 0.99


def test_calibrate_single_replicate():
    rep = calibrate(SimConfig(20, 2, 1, 3))
    assert math.isnan(rep.empirical_var)
    assert rep.rejection_rate_at_05_exact in (0.0, 1.0)


def test_power_monotone_in_strength():
    rates = [
        calibrate(SimConfig(50, 3, 10_000, SEED, effect_strength=t)).rejection_rate_at_05_exact
        for t in (0.0, 0.2, 0.5, 1.0)
    ]
    assert all(a <= b for a, b in zip(rates, rates[1:])), rates


def test_wald_and_exact_rejection_rates_agree():
    # stated expectation (< 0.01 apart at n = 200, k = 3); the Gaussian
    # approximation over-rejects (≈ 0.07 vs 0.05), so this fails
    rep = calibrate(SimConfig(200, 3, 10_000, SEED))
    assert abs(rep.rejection_rate_at_05_wald - rep.rejection_rate_at_05_exact) < 0.01
