"""The two least-squares fits behind the β̂ effect.

The reversed multiple regression ``x = a·1 + Y b + e`` gives the score
``s = Y b̂``; regressing ``s`` back on ``x`` gives the slope β̂, which equals
Pillai's trace for the MANOVA of Y on x.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import ConsistencyError, DegenerateX, NotPositiveDefinite, RankDeficient, TooFewRows
from .linalg import as_matrix, as_vector, gram, spd_solve

#: x counts as constant when its standard deviation is below this fraction of max |x|
CONSTANT_RTOL = 1e-12
RANGE_SLACK = 1e-10


def centered_sum_of_squares(v: np.ndarray, name: str = "x") -> float:
    """Return ``Σ (v - v̄)²``, raising :class:`DegenerateX` for constant ``v``."""
    sxx = float(np.sum((v - v.mean()) ** 2))
    peak = float(np.max(np.abs(v)))
    if sxx <= (CONSTANT_RTOL * peak) ** 2 * v.size:
        raise DegenerateX(f"{name} is constant; its centered sum of squares is zero")
    return sxx


@dataclass(frozen=True)
class MultiRegressionFit:
    intercept: float
    coefficients: np.ndarray
    score: np.ndarray
    fitted: np.ndarray
    residuals: np.ndarray
    r_squared: float


@dataclass(frozen=True)
class SimpleRegressionFit:
    intercept: float
    slope: float
    r_squared: float


def _check_shapes(x: ArrayLike, y: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    x = as_vector(x, "x")
    y = as_matrix(y, "Y")
    n, k = y.shape
    if x.size != n:
        raise ValueError(f"x has length {x.size} but Y has {n} rows")
    if n < k + 2:
        raise TooFewRows(n, k)
    return x, y


def fit_multiple(x: ArrayLike, y: ArrayLike) -> MultiRegressionFit:
    """Least-squares fit of ``x`` on an intercept plus the columns of ``Y``.

    Solves the normal equations of the design ``(1, Y)`` by Cholesky.
    Raises :class:`RankDeficient` if ``(1, Y)`` is singular and
    :class:`DegenerateX` if ``x`` is constant.
    """
    x, y = _check_shapes(x, y)
    n, k = y.shape
    sxx = centered_sum_of_squares(x)

    design = np.column_stack([np.ones(n), y])
    try:
        coef = spd_solve(gram(design), design.T @ x)
    except NotPositiveDefinite as exc:
        col = exc.pivot - 1 if exc.pivot >= 1 else None
        what = "a constant column" if col is not None and _is_constant(y[:, col]) else "collinear columns"
        raise RankDeficient(
            f"design (1, Y) is singular: Y column {col} makes {what}", column=col
        ) from exc

    intercept = float(coef[0])
    b = coef[1:]
    score = y @ b
    fitted = intercept + score
    residuals = x - fitted
    r2 = 1.0 - float(residuals @ residuals) / sxx
    for arr in (b, score, fitted, residuals):
        arr.flags.writeable = False
    return MultiRegressionFit(intercept, b, score, fitted, residuals, r2)


def _is_constant(col: np.ndarray) -> bool:
    try:
        centered_sum_of_squares(col)
    except DegenerateX:
        return True
    return False


def fit_simple(response: ArrayLike, predictor: ArrayLike) -> SimpleRegressionFit:
    """Ordinary least-squares line ``response = μ + β·predictor``."""
    r = as_vector(response, "response")
    p = as_vector(predictor, "predictor")
    if r.size != p.size:
        raise ValueError(f"response has length {r.size}, predictor {p.size}")
    if r.size < 3:
        raise ValueError("need at least 3 observations")
    spp = centered_sum_of_squares(p, "predictor")
    pc = p - p.mean()
    rc = r - r.mean()
    spr = float(pc @ rc)
    slope = spr / spp
    intercept = float(r.mean()) - slope * float(p.mean())
    srr = float(rc @ rc)
    r2 = spr * spr / (spp * srr) if srr > 0.0 else 0.0
    return SimpleRegressionFit(intercept, slope, r2)


def beta_effect(x: ArrayLike, y: ArrayLike) -> float:
    """Slope of the score ``Y b̂`` regressed on ``x``; lies in [0, 1]."""
    x, y = _check_shapes(x, y)
    score = fit_multiple(x, y).score
    slope = fit_simple(score, x).slope
    if not -RANGE_SLACK <= slope <= 1.0 + RANGE_SLACK:
        raise ConsistencyError(f"beta effect {slope!r} outside [0, 1]; numerical fault")
    return slope
