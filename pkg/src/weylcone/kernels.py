"""Vectorized geometric predicates for batches of small generic cones.

All functions take stacks of generator matrices and assume general position,
which holds almost surely for the sampling laws used here. Single-instance
LP and NNLS routines in :mod:`weylcone.geometry` are the reference
implementations; the tests cross-check the two.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

TOL = 1e-10


def cofactor_normals(B: np.ndarray) -> np.ndarray:
    """Normal vectors to the rows of ``B`` (shape ``(N, p-1, p)``).

    Component ``i`` is the signed minor with column ``i`` deleted, the usual
    generalized cross product.
    """
    N, r, p = B.shape
    if r != p - 1:
        raise ValueError("need p-1 vectors in dimension p")
    if p == 1:
        return np.ones((N, 1))
    out = np.empty((N, p))
    for i in range(p):
        minor = np.delete(B, i, axis=2)
        out[:, i] = (-1) ** i * np.linalg.det(minor)
    return out


def positively_spans(W: np.ndarray) -> np.ndarray:
    """Whether the rows of each ``W[n]`` (shape ``(N, q, p)``) positively span R^p.

    For generic vectors the positive hull misses a direction exactly when
    some ``p-1`` of them span a hyperplane that has all the others strictly
    on one side.
    """
    W = np.asarray(W, dtype=float)
    N, q, p = W.shape
    if p == 0:
        return np.ones(N, dtype=bool)
    if q < p + 1:
        return np.zeros(N, dtype=bool)
    if p == 1:
        w = W[:, :, 0]
        return (w > 0).any(axis=1) & (w < 0).any(axis=1)
    spans = np.ones(N, dtype=bool)
    for J in combinations(range(q), p - 1):
        rest = [i for i in range(q) if i not in J]
        u = cofactor_normals(W[:, list(J), :])
        s = np.einsum("nip,np->ni", W[:, rest, :], u)
        spans &= ~((s > 0).all(axis=1) | (s < 0).all(axis=1))
    return spans


def haar_orthogonal(rng: np.random.Generator, N: int, d: int) -> np.ndarray:
    """``N`` Haar-distributed orthogonal ``d x d`` matrices."""
    Z = rng.standard_normal((N, d, d))
    Q, R = np.linalg.qr(Z)
    signs = np.sign(np.diagonal(R, axis1=1, axis2=2))
    signs[signs == 0] = 1.0
    return Q * signs[:, None, :]


def projection_face_dims(V: np.ndarray, g: np.ndarray, tol: float = TOL):
    """Face dimension of the projection of ``g[n]`` onto ``pos(V[n])``.

    ``V`` has shape ``(N, d, m)`` with generators as columns. Each candidate
    support ``S`` is checked against the KKT conditions (positive
    coefficients, residual nonpositive on every generator). Returns
    ``(dims, projections)``; ``dims`` is ``-1`` where no support passed the
    check, which only happens within ``tol`` of a face boundary.
    """
    V = np.asarray(V, dtype=float)
    g = np.asarray(g, dtype=float)
    N, d, m = V.shape
    dims = np.full(N, -1, dtype=np.int64)
    proj = np.zeros((N, d))
    dots = np.einsum("ndm,nd->nm", V, g)
    dims[(dots <= tol).all(axis=1)] = 0
    for r in range(1, min(m, d) + 1):
        for S in combinations(range(m), r):
            todo = np.flatnonzero(dims < 0)
            if todo.size == 0:
                return dims, proj
            VS = V[todo][:, :, list(S)]
            gram = np.einsum("ndi,ndj->nij", VS, VS)
            rhs = np.einsum("ndi,nd->ni", VS, g[todo])
            lam = np.linalg.solve(gram, rhs[..., None])[..., 0]
            p = np.einsum("ndi,ni->nd", VS, lam)
            resid = g[todo] - p
            c = np.einsum("ndm,nd->nm", V[todo], resid)
            ok = (lam > tol).all(axis=1) & (c <= tol).all(axis=1)
            hit = todo[ok]
            dims[hit] = r
            proj[hit] = p[ok]
    return dims, proj


def face_counts(V: np.ndarray, k: int) -> np.ndarray:
    """Number of ``k``-faces of each ``pos(V[n])``, for pointed generic cones.

    A ``k``-subset ``S`` spans a face iff the remaining generators, projected
    onto the orthogonal complement of ``span(S)``, lie in an open half-space.
    """
    V = np.asarray(V, dtype=float)
    N, d, m = V.shape
    if not 1 <= k <= d - 1:
        raise ValueError(f"k must be in 1..{d - 1}, got {k}")
    counts = np.zeros(N, dtype=np.int64)
    for S in combinations(range(m), k):
        rest = [i for i in range(m) if i not in S]
        Q, _ = np.linalg.qr(V[:, :, list(S)], mode="complete")
        P = Q[:, :, k:]
        W = np.einsum("ndj,ndi->nij", P, V[:, :, rest])
        counts += ~positively_spans(W)
    return counts


def meets_subspace(V: np.ndarray, Q: np.ndarray, k: int, weyl: bool) -> np.ndarray:
    """Whether each cone meets the random ``(d-k)``-subspace nontrivially.

    ``Q[n]`` is orthogonal; its first ``d-k`` columns span the subspace ``L``.
    With ``weyl=False`` the cone is ``pos(V)``: it meets ``L`` iff the
    generators projected onto ``L``'s complement positively span it. With
    ``weyl=True`` the cone is the polar ``{u : <u, v_i> <= 0}``, which meets
    ``L`` iff the generators restricted to ``L`` fail to positively span it.
    """
    N, d, m = V.shape
    if weyl:
        B = Q[:, :, : d - k]
        W = np.einsum("ndj,ndi->nij", B, V)
        return ~positively_spans(W)
    B = Q[:, :, d - k:]
    W = np.einsum("ndj,ndi->nij", B, V)
    return positively_spans(W)
