"""Pillai's trace for the one-predictor MANOVA of Y on x.

T is the centered SSCP of Y, E the SSCP of the residuals of each Y column
regressed on (1, x), and ``V = tr{(T - E) T⁻¹}``.  With a single predictor
the hypothesis SSCP has rank one, so V is the lone nonzero eigenvalue of
``(T - E) T⁻¹`` and lies in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import ConsistencyError, NotPositiveDefinite, RankDeficient
from .linalg import as_matrix, as_vector, center_columns, cholesky, cholesky_solve, gram
from .regression import RANGE_SLACK, centered_sum_of_squares


def _symmetrize(m: np.ndarray) -> np.ndarray:
    out = 0.5 * (m + m.T)
    out.flags.writeable = False
    return out


def probe_vectors(k: int, seed: int = 20240611) -> np.ndarray:
    """Unit vectors (rows) used to spot-check positive semidefiniteness.

    Eight fixed directions (coordinate axes, topped up with Walsh sign
    patterns when k < 8) followed by eight seeded random directions.
    """
    fixed = [np.eye(k)[i] for i in range(min(k, 8))]
    idx = np.arange(k)
    mask = 0
    while len(fixed) < 8:
        parity = np.array([bin(i & mask).count("1") % 2 for i in idx])
        fixed.append(1.0 - 2.0 * parity)
        mask += 1
    rng = np.random.default_rng(seed)
    rand = rng.standard_normal((8, k))
    probes = np.vstack([np.array(fixed), rand])
    return probes / np.linalg.norm(probes, axis=1, keepdims=True)


@dataclass(frozen=True)
class PillaiResult:
    error_sscp: np.ndarray
    total_sscp: np.ndarray
    hypothesis_sscp: np.ndarray
    trace: float

    def check(self, rtol: float = 1e-10) -> None:
        """Raise :class:`ConsistencyError` if a structural invariant fails."""
        t, e, h = self.total_sscp, self.error_sscp, self.hypothesis_sscp
        scale = max(float(np.abs(t).max()), 1.0)
        for name, m in (("E", e), ("T", t), ("T - E", h)):
            if np.abs(m - m.T).max() > rtol * scale:
                raise ConsistencyError(f"{name} is not symmetric")
        if np.abs(t - (e + h)).max() > rtol * scale:
            raise ConsistencyError("T != E + (T - E)")
        probes = probe_vectors(t.shape[0])
        for name, m in (("E", e), ("T", t)):
            if np.diag(m).min() < -rtol * scale:
                raise ConsistencyError(f"{name} has a negative diagonal entry")
            quad = np.einsum("ij,jk,ik->i", probes, m, probes)
            if quad.min() < -1e-8 * scale:
                raise ConsistencyError(f"{name} is not positive semidefinite")
        if not -RANGE_SLACK <= self.trace <= 1.0 + RANGE_SLACK:
            raise ConsistencyError(f"Pillai trace {self.trace!r} outside [0, 1]")


def total_sscp(y: ArrayLike) -> np.ndarray:
    """``T = Yᵀ(I - 11ᵀ/n)Y``."""
    y = as_matrix(y, "Y")
    if y.shape[0] < 2:
        raise ValueError("need at least 2 rows")
    return gram(center_columns(y))


def error_sscp(x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """``E = Yᵀ(I - P_B)Y`` for the projector ``P_B`` onto span(1, x).

    Built from the residuals of each Y column regressed on (1, x), so the
    n×n projector is never materialized.
    """
    x = as_vector(x, "x")
    y = as_matrix(y, "Y")
    if x.size != y.shape[0]:
        raise ValueError(f"x has length {x.size} but Y has {y.shape[0]} rows")
    sxx = centered_sum_of_squares(x)
    xc = x - x.mean()
    yc = y - y.mean(axis=0)
    slopes = (xc @ yc) / sxx
    resid = yc - np.outer(xc, slopes)
    return _symmetrize(gram(resid))


def pillai_trace(x: ArrayLike, y: ArrayLike) -> PillaiResult:
    """Pillai's trace ``tr{T⁻¹(T - E)}`` via one Cholesky factorization of T."""
    x = as_vector(x, "x")
    y = as_matrix(y, "Y")
    e = error_sscp(x, y)
    t = total_sscp(y)
    h = _symmetrize(t - e)
    try:
        low = cholesky(t)
    except NotPositiveDefinite as exc:
        raise RankDeficient(
            f"total SSCP is singular: Y column {exc.pivot} is constant or collinear", column=exc.pivot
        ) from exc
    z = cholesky_solve(low, h)
    trace = float(np.trace(z))
    if not -RANGE_SLACK <= trace <= 1.0 + RANGE_SLACK:
        raise ConsistencyError(f"Pillai trace {trace!r} outside [0, 1]; numerical fault")
    return PillaiResult(error_sscp=e, total_sscp=t, hypothesis_sscp=h, trace=trace)
