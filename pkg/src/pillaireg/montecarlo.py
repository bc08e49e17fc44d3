"""Monte Carlo check of the Beta null law and calibration of the Wald test.

Every replicate draws from its own Philox stream keyed by
``(seed, replicate index, attempt)``, so results do not depend on how the
replicates are scheduled.  Gaussian variates come from NumPy's
``Generator.standard_normal`` (ziggurat method).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NumericalError
from .inference import BetaParams, beta_cdf, exact_p_value, wald_test
from .regression import beta_effect

MAX_ATTEMPTS = 100
#: asymptotic Kolmogorov critical constants c(q), D_crit = c(q) / sqrt(m)
KS_CRITICAL = {0.10: 1.224, 0.05: 1.358, 0.01: 1.628}


@dataclass(frozen=True)
class SimConfig:
    n: int
    k: int
    replicates: int
    seed: int
    effect_strength: float = 0.0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.n < self.k + 2:
            raise ValueError(f"n must be at least k + 2 = {self.k + 2}, got {self.n}")
        if self.replicates < 1:
            raise ValueError(f"replicates must be at least 1, got {self.replicates}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not (math.isfinite(self.effect_strength) and self.effect_strength >= 0):
            raise ValueError(f"effect_strength must be finite and nonnegative, got {self.effect_strength}")


@dataclass(frozen=True)
class CalibrationReport:
    empirical_mean: float
    empirical_var: float
    ks_distance: float
    p_uniformity_ks: float
    rejection_rate_at_05_exact: float
    rejection_rate_at_05_wald: float
    resampled: int = 0


class Simulation(NamedTuple):
    effects: np.ndarray
    resampled: int


def replicate_rng(seed: int, index: int, attempt: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(index, attempt))
    return np.random.Generator(np.random.Philox(ss))


def draw(config: SimConfig, index: int, attempt: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """One dataset: standard Gaussian x and Y, plus ``θ·Y[:, 0]`` added to x."""
    rng = replicate_rng(config.seed, index, attempt)
    x = rng.standard_normal(config.n)
    y = rng.standard_normal((config.n, config.k))
    if config.effect_strength:
        x = x + config.effect_strength * y[:, 0]
    return x, y


def replicate_effect(config: SimConfig, index: int) -> tuple[float, int]:
    """Effect for replicate ``index`` and how many degenerate draws were skipped."""
    for attempt in range(MAX_ATTEMPTS):
        x, y = draw(config, index, attempt)
        try:
            return beta_effect(x, y), attempt
        except NumericalError:
            continue
    raise NumericalError(f"replicate {index}: {MAX_ATTEMPTS} consecutive degenerate draws")


def _effects_range(config: SimConfig, start: int, stop: int) -> tuple[list[float], int]:
    out = []
    bumps = 0
    for i in range(start, stop):
        value, skipped = replicate_effect(config, i)
        out.append(value)
        bumps += skipped
    return out, bumps


def simulate_effects(config: SimConfig, workers: int = 1) -> Simulation:
    """Effects for all replicates, in replicate-index order."""
    m = config.replicates
    if workers <= 1 or m < 2 * workers:
        values, bumps = _effects_range(config, 0, m)
        return Simulation(np.array(values), bumps)
    edges = np.linspace(0, m, workers + 1).astype(int)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_effects_range, [config] * workers, edges[:-1], edges[1:]))
    values = [v for part, _ in parts for v in part]
    return Simulation(np.array(values), sum(b for _, b in parts))


def simulate_null(config: SimConfig, workers: int = 1) -> np.ndarray:
    if config.effect_strength != 0:
        raise ValueError("simulate_null requires effect_strength = 0")
    return simulate_effects(config, workers).effects


def ks_distance(sample: np.ndarray, cdf) -> float:
    """Kolmogorov–Smirnov sup distance between the sample ECDF and ``cdf``."""
    xs = np.sort(np.asarray(sample, dtype=np.float64))
    m = xs.size
    if m == 0:
        raise ValueError("sample is empty")
    f = np.array([cdf(v) for v in xs])
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - f), np.max(f - (i - 1) / m)))


def ks_against_beta(effects: np.ndarray, p: BetaParams) -> float:
    effects = np.asarray(effects, dtype=np.float64)
    if effects.size == 0 or effects.min() < 0 or effects.max() > 1:
        raise ValueError("effects must be a nonempty sample in [0, 1]")
    return ks_distance(effects, lambda v: beta_cdf(v, p.alpha, p.beta))


def ks_critical_value(m: int, q: float = 0.01) -> float:
    return KS_CRITICAL[q] / math.sqrt(m)


def calibrate(config: SimConfig, workers: int = 1, level: float = 0.05) -> CalibrationReport:
    sim = simulate_effects(config, workers)
    effects = sim.effects
    params = BetaParams.null(config.n, config.k)
    p_exact = np.array([exact_p_value(min(max(e, 0.0), 1.0), config.n, config.k) for e in effects])
    p_wald = np.array([wald_test(min(max(e, 0.0), 1.0), config.n, config.k).p for e in effects])
    m = effects.size
    return CalibrationReport(
        empirical_mean=float(effects.mean()),
        empirical_var=float(effects.var(ddof=1)) if m > 1 else math.nan,
        ks_distance=ks_against_beta(np.clip(effects, 0.0, 1.0), params),
        p_uniformity_ks=ks_distance(p_exact, lambda u: min(max(u, 0.0), 1.0)),
        rejection_rate_at_05_exact=float(np.mean(p_exact <= level)),
        rejection_rate_at_05_wald=float(np.mean(p_wald <= level)),
        resampled=sim.resampled,
    )
