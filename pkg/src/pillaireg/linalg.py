"""Dense real linear algebra shared by the regression and MANOVA code.

Matrices and vectors are plain float64 NumPy arrays.  :func:`as_matrix` and
:func:`as_vector` are the construction points: they copy, reject non-finite
entries and empty dimensions, and return read-only arrays.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from .errors import NotPositiveDefinite

#: relative pivot threshold for the Cholesky factorization
PIVOT_RTOL = 1e-12


def as_matrix(a: ArrayLike, name: str = "matrix") -> np.ndarray:
    m = np.array(a, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {m.shape}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"{name} must have positive dimensions, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains NaN or Inf")
    m.flags.writeable = False
    return m


def as_vector(v: ArrayLike, name: str = "vector") -> np.ndarray:
    a = np.array(v, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {a.shape}")
    if a.size < 1:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains NaN or Inf")
    a.flags.writeable = False
    return a


def center_columns(m: ArrayLike) -> np.ndarray:
    """Subtract each column's mean, i.e. apply ``I - 11ᵀ/n`` from the left."""
    m = as_matrix(m)
    out = m - m.mean(axis=0)
    out.flags.writeable = False
    return out


def gram(m: ArrayLike) -> np.ndarray:
    """``MᵀM``, with the lower triangle mirrored from the upper so the result
    is exactly symmetric."""
    m = as_matrix(m)
    g = m.T @ m
    upper = np.triu(g)
    g = upper + np.triu(g, 1).T
    g.flags.writeable = False
    return g


def _check_symmetric(s: np.ndarray) -> None:
    if s.shape[0] != s.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {s.shape}")
    scale = max(float(np.abs(s).max()), 1.0)
    if float(np.abs(s - s.T).max()) > 1e-10 * scale:
        raise ValueError("matrix is not symmetric")


def cholesky(s: ArrayLike) -> np.ndarray:
    """Lower-triangular ``L`` with ``L Lᵀ = S``.

    Raises :class:`NotPositiveDefinite` with the failing pivot index when a
    pivot drops below ``PIVOT_RTOL`` times the largest diagonal entry of S.
    """
    s = as_matrix(s)
    _check_symmetric(s)
    m = s.shape[0]
    max_diag = float(np.max(np.diag(s)))
    if not max_diag > 0.0:
        raise NotPositiveDefinite(0, max_diag)
    tol = PIVOT_RTOL * max_diag
    low = np.zeros_like(s)
    for j in range(m):
        row = low[j, :j]
        d = s[j, j] - row @ row
        if not d > tol:
            raise NotPositiveDefinite(j, float(d))
        ljj = np.sqrt(d)
        low[j, j] = ljj
        if j + 1 < m:
            low[j + 1 :, j] = (s[j + 1 :, j] - low[j + 1 :, :j] @ row) / ljj
    return low


def cholesky_solve(low: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve ``L Lᵀ X = rhs`` by forward then back substitution."""
    vector = rhs.ndim == 1
    b = rhs.reshape(-1, 1) if vector else rhs
    m = low.shape[0]
    if b.shape[0] != m:
        raise ValueError(f"rhs has {b.shape[0]} rows, expected {m}")
    y = np.empty((m, b.shape[1]))
    for i in range(m):
        y[i] = (b[i] - low[i, :i] @ y[:i]) / low[i, i]
    x = np.empty_like(y)
    for i in range(m - 1, -1, -1):
        x[i] = (y[i] - low[i + 1 :, i] @ x[i + 1 :]) / low[i, i]
    return x[:, 0] if vector else x


def spd_solve(s: ArrayLike, rhs: ArrayLike) -> np.ndarray:
    """Solve ``S X = rhs`` for symmetric positive-definite S.

    ``rhs`` may be a vector or a matrix; the result has the same shape.  No
    inverse is ever formed.
    """
    low = cholesky(s)
    rhs = np.asarray(rhs, dtype=np.float64)
    if rhs.ndim == 1:
        rhs = as_vector(rhs, "rhs")
    else:
        rhs = as_matrix(rhs, "rhs")
    return cholesky_solve(low, rhs)


def centered_gram_inverse_apply(y: ArrayLike, rhs: ArrayLike) -> np.ndarray:
    """Apply ``(YᵀY - Yᵀ11ᵀY/n)⁻¹`` to ``rhs``.

    The matrix being inverted is the total SSCP of Y (see
    :func:`pillaireg.manova.total_sscp`), so a :class:`NotPositiveDefinite`
    here means the columns of Y are collinear after centering.
    """
    t = gram(center_columns(y))
    return spd_solve(t, rhs)
