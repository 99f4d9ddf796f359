"""Small dense linear programs: two-phase tableau simplex with Bland's rule.

Solves ``min c @ x`` subject to ``A_ub @ x <= b_ub``, ``A_eq @ x == b_eq`` and
per-variable bounds. Problems here have a few dozen variables at most, so a
dense tableau is plenty and keeps results deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FEAS_TOL = 1e-9


class LPError(RuntimeError):
    """Numerical breakdown or iteration limit inside the simplex."""


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible", "unbounded" or "iteration_limit"
    x: np.ndarray | None
    fun: float | None
    iterations: int

    @property
    def success(self) -> bool:
        return self.status == "optimal"


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    col_vals = T[:, col].copy()
    col_vals[row] = 0.0
    T -= np.outer(col_vals, T[row])


def _simplex(T, basis, n_cols, tol, max_iter, it0=0):
    """Run Bland-rule pivots on tableau ``T`` (objective in the last row).

    Only the first ``n_cols`` columns may enter. Returns (status, iterations).
    """
    m = T.shape[0] - 1
    it = it0
    while True:
        cost = T[-1, :n_cols]
        candidates = np.flatnonzero(cost < -tol)
        if candidates.size == 0:
            return "optimal", it
        if it >= max_iter:
            return "iteration_limit", it
        col = int(candidates[0])
        column = T[:m, col]
        pos = column > tol
        if not pos.any():
            return "unbounded", it
        ratios = np.full(m, np.inf)
        ratios[pos] = T[:m, -1][pos] / column[pos]
        best = ratios.min()
        ties = np.flatnonzero(ratios <= best + tol * max(1.0, abs(best)))
        row = int(min(ties, key=lambda r: basis[r]))
        _pivot(T, row, col)
        basis[row] = col
        it += 1


def linprog(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=None, *,
            tol: float = FEAS_TOL, max_iter: int = 10_000) -> LPResult:
    """Minimize ``c @ x``.

    ``bounds`` is a sequence of ``(lo, hi)`` pairs with ``None`` for an open
    side, or a single pair applied to every variable. The default is
    ``(0, None)`` as usual.
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    A_ub = np.zeros((0, n)) if A_ub is None else np.atleast_2d(np.asarray(A_ub, dtype=float))
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float).ravel()
    A_eq = np.zeros((0, n)) if A_eq is None else np.atleast_2d(np.asarray(A_eq, dtype=float))
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float).ravel()
    if A_ub.shape != (b_ub.size, n) or A_eq.shape != (b_eq.size, n):
        raise ValueError("constraint shapes do not match the objective")
    if bounds is None:
        bounds = [(0.0, None)] * n
    elif len(bounds) == 2 and not isinstance(bounds[0], (tuple, list)):
        bounds = [tuple(bounds)] * n
    if len(bounds) != n:
        raise ValueError("need one bound pair per variable")

    # x = shift + M @ y with y >= 0
    cols = []  # (variable index, sign) per y column
    shift = np.zeros(n)
    upper_rows = []
    for i, (lo, hi) in enumerate(bounds):
        lo = -np.inf if lo is None else float(lo)
        hi = np.inf if hi is None else float(hi)
        if lo > hi:
            return LPResult("infeasible", None, None, 0)
        if np.isfinite(lo):
            shift[i] = lo
            cols.append((i, 1.0))
            if np.isfinite(hi):
                upper_rows.append((len(cols) - 1, hi - lo))
        elif np.isfinite(hi):
            shift[i] = hi
            cols.append((i, -1.0))
        else:
            cols.append((i, 1.0))
            cols.append((i, -1.0))
    M = np.zeros((n, len(cols)))
    for j, (i, s) in enumerate(cols):
        M[i, j] = s
    ny = len(cols)

    G = A_ub @ M
    h = b_ub - A_ub @ shift
    if upper_rows:
        U = np.zeros((len(upper_rows), ny))
        for r, (j, ub) in enumerate(upper_rows):
            U[r, j] = 1.0
        G = np.vstack([G, U])
        h = np.concatenate([h, [ub for _, ub in upper_rows]])
    E = A_eq @ M
    f = b_eq - A_eq @ shift
    cy = c @ M
    offset = float(c @ shift)

    m_ub, m_eq = G.shape[0], E.shape[0]
    m = m_ub + m_eq
    if m == 0:
        if (cy < -tol).any():
            return LPResult("unbounded", None, None, 0)
        return LPResult("optimal", shift.copy(), offset, 0)

    # rows: G y + s = h, E y = f; flip rows so the right-hand side is >= 0
    n_slack = m_ub
    A = np.zeros((m, ny + n_slack))
    A[:m_ub, :ny] = G
    A[:m_ub, ny:] = np.eye(m_ub)
    A[m_ub:, :ny] = E
    rhs = np.concatenate([h, f])
    neg = rhs < 0
    A[neg] *= -1.0
    rhs[neg] *= -1.0

    basis = [-1] * m
    art_rows = []
    for r in range(m_ub):
        if not neg[r]:
            basis[r] = ny + r
    for r in range(m):
        if basis[r] < 0:
            art_rows.append(r)
    n_main = ny + n_slack
    n_art = len(art_rows)
    T = np.zeros((m + 1, n_main + n_art + 1))
    T[:m, :n_main] = A
    T[:m, -1] = rhs
    for a, r in enumerate(art_rows):
        T[r, n_main + a] = 1.0
        basis[r] = n_main + a

    it = 0
    if n_art:
        # phase one: minimize the sum of artificials
        T[-1, n_main:n_main + n_art] = 1.0
        for r in art_rows:
            T[-1] -= T[r]
        status, it = _simplex(T, basis, n_main + n_art, tol, max_iter)
        if status == "iteration_limit":
            return LPResult(status, None, None, it)
        scale = max(1.0, float(np.abs(rhs).max()))
        if -T[-1, -1] > tol * scale * 10:
            return LPResult("infeasible", None, None, it)
        # drive remaining artificials out of the basis
        keep = np.ones(m, dtype=bool)
        for r in range(m):
            if basis[r] >= n_main:
                nz = np.flatnonzero(np.abs(T[r, :n_main]) > tol)
                if nz.size:
                    _pivot(T, r, int(nz[0]))
                    basis[r] = int(nz[0])
                else:
                    keep[r] = False  # redundant equality
        rows = np.flatnonzero(keep)
        T = np.vstack([T[rows][:, list(range(n_main)) + [T.shape[1] - 1]], np.zeros(n_main + 1)])
        basis = [basis[r] for r in rows]
    else:
        T = T[:, list(range(n_main)) + [T.shape[1] - 1]]

    # phase two
    T[-1, :] = 0.0
    T[-1, :ny] = cy
    for r, b in enumerate(basis):
        if T[-1, b] != 0.0:
            T[-1] -= T[-1, b] * T[r]
    status, it = _simplex(T, basis, n_main, tol, max_iter, it)
    if status != "optimal":
        return LPResult(status, None, None, it)
    y = np.zeros(n_main)
    for r, b in enumerate(basis):
        y[b] = T[r, -1]
    if not np.all(np.isfinite(y)):
        raise LPError("non-finite basic solution")
    x = shift + M @ y[:ny]
    return LPResult("optimal", x, float(c @ x), it)
