"""Dense weighted least squares for the IRLS inner step.

The solver factors the normal matrix X'WX by an unpivoted Cholesky with an
explicit pivot check: any pivot that is nonpositive or smaller than 1e-12
times the largest pivot seen so far raises :class:`RankDeficiencyError`
naming the offending design column.  That threshold separates genuine
collinearity (duplicated dummy columns) from mere ill-conditioning at the
problem sizes this package targets (p up to a few dozen).
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "RankDeficiencyError",
    "WlsSolution",
    "mat_vec",
    "weighted_least_squares",
    "xtwx_inverse",
]

PIVOT_RTOL = 1e-12


class RankDeficiencyError(ValueError):
    """The normal matrix is singular at a named design column."""

    def __init__(self, column_label: str, pivot: float, largest: float):
        self.column_label = column_label
        self.pivot = pivot
        super().__init__(
            f"rank-deficient design: column {column_label!r} has pivot "
            f"{pivot:.3e} against largest pivot {largest:.3e}"
        )


@dataclass(frozen=True)
class WlsSolution:
    """Coefficients and covariance from one weighted least-squares solve."""

    coefficients: np.ndarray  # (p,)
    covariance: np.ndarray    # (p, p), symmetric = (X'WX)^-1
    rank_ok: bool


def mat_vec(matrix, vector) -> np.ndarray:
    """Matrix-vector product with an explicit dimension check."""
    m = np.asarray(matrix, dtype=float)
    v = np.asarray(vector, dtype=float)
    if m.ndim != 2 or v.ndim != 1:
        raise ValueError("mat_vec expects a 2-d matrix and a 1-d vector")
    if m.shape[1] != v.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix is {m.shape[0]}x{m.shape[1]}, "
            f"vector has length {v.shape[0]}"
        )
    return m @ v


def _column_label(labels, j: int) -> str:
    if labels is not None and j < len(labels):
        return str(labels[j])
    return f"column {j}"


def _cholesky_spd(a: np.ndarray, labels=None) -> np.ndarray:
    """Lower Cholesky factor of a symmetric matrix, with pivot policing."""
    p = a.shape[0]
    lower = np.zeros_like(a)
    largest = 0.0
    for j in range(p):
        pivot = a[j, j] - lower[j, :j] @ lower[j, :j]
        largest = max(largest, pivot)
        if pivot <= 0.0 or pivot < PIVOT_RTOL * largest:
            raise RankDeficiencyError(_column_label(labels, j), pivot, largest)
        lower[j, j] = np.sqrt(pivot)
        if j + 1 < p:
            lower[j + 1:, j] = (
                a[j + 1:, j] - lower[j + 1:, :j] @ lower[j, :j]
            ) / lower[j, j]
    return lower


def _forward_solve(lower: np.ndarray, b: np.ndarray) -> np.ndarray:
    p = lower.shape[0]
    x = np.zeros(p)
    for i in range(p):
        x[i] = (b[i] - lower[i, :i] @ x[:i]) / lower[i, i]
    return x


def _back_solve(lower: np.ndarray, b: np.ndarray) -> np.ndarray:
    p = lower.shape[0]
    x = np.zeros(p)
    for i in range(p - 1, -1, -1):
        x[i] = (b[i] - lower[i + 1:, i] @ x[i + 1:]) / lower[i, i]
    return x


def _chol_inverse(lower: np.ndarray) -> np.ndarray:
    p = lower.shape[0]
    inv = np.empty((p, p))
    eye = np.eye(p)
    for j in range(p):
        inv[:, j] = _back_solve(lower, _forward_solve(lower, eye[:, j]))
    return 0.5 * (inv + inv.T)


def _check_system(x, w, z):
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    z = None if z is None else np.asarray(z, dtype=float)
    if x.ndim != 2:
        raise ValueError("design matrix must be 2-d")
    n, p = x.shape
    if p < 1 or n < p:
        raise ValueError(f"need n >= p >= 1, got n={n}, p={p}")
    if not np.all(np.isfinite(x)):
        raise ValueError("design matrix contains non-finite entries")
    if w.shape != (n,):
        raise ValueError("weights must be a vector of length n")
    if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
        raise ValueError("weights must be positive and finite")
    if z is not None:
        if z.shape != (n,):
            raise ValueError("working response must be a vector of length n")
        if not np.all(np.isfinite(z)):
            raise ValueError("working response contains non-finite entries")
    return x, w, z


def weighted_least_squares(x, w, z, column_labels=None) -> WlsSolution:
    """Solve (X'WX) beta = X'Wz and return beta with (X'WX)^-1.

    Parameters
    ----------
    x : (n, p) array
        Design matrix, n >= p >= 1.
    w : (n,) array
        Strictly positive weights.
    z : (n,) array
        Working response.
    column_labels : sequence of str, optional
        Used to name the offending column on rank failure.

    Raises
    ------
    RankDeficiencyError
        When the Cholesky factorization of X'WX meets a pivot below
        ``PIVOT_RTOL`` times the largest pivot.
    """
    x, w, z = _check_system(x, w, z)
    xw = x * w[:, None]
    normal = x.T @ xw
    rhs = xw.T @ z
    lower = _cholesky_spd(normal, column_labels)
    beta = _back_solve(lower, _forward_solve(lower, rhs))
    return WlsSolution(beta, _chol_inverse(lower), True)


def xtwx_inverse(x, w, column_labels=None) -> np.ndarray:
    """(X'WX)^-1 alone, for covariance extraction at a fitted point."""
    x, w, _ = _check_system(x, w, None)
    lower = _cholesky_spd(x.T @ (x * w[:, None]), column_labels)
    return _chol_inverse(lower)
