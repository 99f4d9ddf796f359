"""Nonnegative least squares by the Lawson-Hanson active-set method."""

from __future__ import annotations

import numpy as np

ACTIVE_TOL = 1e-9


class NNLSError(RuntimeError):
    pass


def nnls(A, b, *, tol: float = ACTIVE_TOL, max_iter: int | None = None) -> tuple[np.ndarray, float]:
    """Return ``(x, rnorm)`` minimizing ``||A x - b||`` over ``x >= 0``.

    ``max_iter`` caps outer iterations (default ``100 * n_columns``); hitting
    the cap raises :class:`NNLSError` carrying the current residual.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).ravel()
    if A.ndim != 2 or A.shape[0] != b.size:
        raise ValueError("A must be (m, n) with m == len(b)")
    m, n = A.shape
    if max_iter is None:
        max_iter = 100 * max(n, 1)
    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    w = A.T @ b
    scale = max(1.0, float(np.abs(w).max(initial=0.0)))
    it = 0
    while True:
        free = ~passive & (w > tol * scale)
        if not free.any():
            break
        if it >= max_iter:
            raise NNLSError(f"no convergence after {it} iterations, residual {np.linalg.norm(A @ x - b):.3e}")
        j = int(np.flatnonzero(free)[np.argmax(w[free])])
        passive[j] = True
        while True:
            it += 1
            idx = np.flatnonzero(passive)
            z = np.zeros(n)
            z[idx] = np.linalg.lstsq(A[:, idx], b, rcond=None)[0]
            if (z[idx] > tol).all():
                x = z
                break
            # step back toward x until the first passive coordinate hits zero
            bad = idx[z[idx] <= tol]
            alpha = np.min(x[bad] / (x[bad] - z[bad]))
            x = x + alpha * (z - x)
            passive &= x > tol
            x[~passive] = 0.0
            if it >= max_iter:
                raise NNLSError(f"no convergence after {it} iterations, residual {np.linalg.norm(A @ x - b):.3e}")
        w = A.T @ (b - A @ x)
    return x, float(np.linalg.norm(A @ x - b))
