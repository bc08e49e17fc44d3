"""Significance of the β̂ effect.

Under the Gaussian null ``β̂ = V = R² ~ Beta(k/2, (n-k-1)/2)``; the F
statistic of the reversed regression is a monotone map of the same quantity.
Both the exact test and its Gaussian (Wald) approximation are one-sided in
the upper tail, since the effect is nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateFit

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000


@dataclass(frozen=True)
class BetaParams:
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and self.beta > 0 and math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError(f"Beta parameters must be positive and finite, got {self.alpha}, {self.beta}")

    @classmethod
    def null(cls, n: int, k: int) -> BetaParams:
        """Null law of the effect for ``n`` rows and ``k`` responses."""
        _check_nk(n, k)
        return cls(k / 2, (n - k - 1) / 2)

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    @property
    def variance(self) -> float:
        s = self.alpha + self.beta
        return self.alpha * self.beta / (s * s * (s + 1.0))


def _check_nk(n: int, k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if n < k + 2:
        raise ValueError(f"n must be at least k + 2 = {k + 2}, got {n}")


def f_from_r2(r2: float, n: int, k: int) -> float:
    """F statistic ``(R²/k) / ((1 - R²)/(n - k - 1))``."""
    _check_nk(n, k)
    if not 0.0 <= r2 <= 1.0:
        raise ValueError(f"R² must lie in [0, 1], got {r2}")
    if r2 == 1.0:
        raise DegenerateFit("R² = 1: the F statistic is infinite")
    return (r2 / k) / ((1.0 - r2) / (n - k - 1))


def r2_from_f(f: float, n: int, k: int) -> float:
    """Inverse of :func:`f_from_r2`: ``kF / ((n - k - 1) + kF)``."""
    _check_nk(n, k)
    if not f >= 0.0:
        raise ValueError(f"F must be nonnegative, got {f}")
    if math.isinf(f):
        return 1.0
    kf = k * f
    return kf / ((n - k - 1) + kf)


def log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def _continued_fraction(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the incomplete-beta continued fraction.
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def _lower_tail_direct(x: float, a: float, b: float) -> float:
    log_front = a * math.log(x) + b * math.log1p(-x) - log_beta(a, b)
    return math.exp(log_front) * _continued_fraction(a, b, x) / a


def beta_cdf(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta ``I_x(a, b)``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    if x < (a + 1.0) / (a + b + 2.0):
        return min(_lower_tail_direct(x, a, b), 1.0)
    return max(1.0 - _lower_tail_direct(1.0 - x, b, a), 0.0)


def beta_sf(x: float, a: float, b: float) -> float:
    """Upper tail ``1 - I_x(a, b)``, evaluated without cancellation."""
    return beta_cdf(1.0 - x, b, a)


def regularized_incomplete_beta(x: float, p: BetaParams) -> float:
    return beta_cdf(x, p.alpha, p.beta)


def exact_p_value(effect: float, n: int, k: int) -> float:
    """Upper-tail probability of ``effect`` under ``Beta(k/2, (n-k-1)/2)``."""
    p = BetaParams.null(n, k)
    if not 0.0 <= effect <= 1.0:
        raise ValueError(f"effect must lie in [0, 1], got {effect}")
    return beta_sf(effect, p.alpha, p.beta)


def f_upper_tail(f: float, df1: int, df2: int) -> float:
    """``P(F(df1, df2) > f)`` through ``I_{df2/(df2 + df1 f)}(df2/2, df1/2)``."""
    if not f >= 0.0:
        raise ValueError(f"F must be nonnegative, got {f}")
    return beta_cdf(df2 / (df2 + df1 * f), df2 / 2, df1 / 2)


def gaussian_upper_tail(z: float) -> float:
    """Standard normal survival function."""
    return 0.5 * math.erfc(z / math.sqrt(2.0))


class WaldResult(NamedTuple):
    z: float
    p: float


def null_moments(n: int, k: int) -> tuple[float, float]:
    """Mean ``k/(n-1)`` and standard deviation of the null Beta law.

    The variance is ``2k(n-k-1) / ((n-1)²(n+1))``.
    """
    _check_nk(n, k)
    mean = k / (n - 1)
    var = 2.0 * k * (n - k - 1) / ((n - 1) ** 2 * (n + 1))
    return mean, math.sqrt(var)


def wald_test(effect: float, n: int, k: int) -> WaldResult:
    """Gaussian approximation to the null law: z-score and upper-tail p."""
    if not 0.0 <= effect <= 1.0:
        raise ValueError(f"effect must lie in [0, 1], got {effect}")
    mean, sd = null_moments(n, k)
    z = (effect - mean) / sd
    return WaldResult(z, gaussian_upper_tail(z))


@dataclass(frozen=True)
class InferenceReport:
    n: int
    k: int
    effect: float
    f_stat: float
    df1: int
    df2: int
    beta_params: BetaParams
    p_exact: float
    wald_z: float
    p_wald: float


def infer(effect: float, n: int, k: int) -> InferenceReport:
    """Collect F, exact and Wald results for an observed effect.

    A perfect fit (effect 1) reports ``f_stat = inf`` and ``p_exact = 0``.
    """
    params = BetaParams.null(n, k)
    effect = min(max(effect, 0.0), 1.0)
    if effect == 1.0:
        f_stat = math.inf
        p_exact = 0.0
    else:
        f_stat = f_from_r2(effect, n, k)
        p_exact = exact_p_value(effect, n, k)
    wald = wald_test(effect, n, k)
    return InferenceReport(
        n=n,
        k=k,
        effect=effect,
        f_stat=f_stat,
        df1=k,
        df2=n - k - 1,
        beta_params=params,
        p_exact=p_exact,
        wald_z=wald.z,
        p_wald=wald.p,
    )
