"""Weyl hyperplane arrangements of random points: chambers and their faces.

The type A arrangement has normals ``Y_i - Y_j`` (``i < j``); type B adds
``Y_i + Y_j`` and ``Y_i``. Chambers are found by breadth-first search over
sign vectors, one LP per candidate; a uniform chamber can also be drawn
without enumeration by rejection over random (signed) orderings of the
points, since each chamber corresponds to exactly one realizable ordering.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from weylcone.combinatorics import ConeType, chamber_count, stirling_table
from weylcone.geometry import (
    DegenerateSampleError, Distribution, SamplerConfig, _draw, difference_columns, make_rng,
    sample_points,
)
from weylcone.kernels import positively_spans
from weylcone.lp import LPError, linprog

log = logging.getLogger(__name__)

MARGIN_TOL = 1e-9
PARALLEL_TOL = 1e-9
MAX_HYPERPLANES = 40
MAX_CHAMBERS = 10**6
FACE_MAX_D = 3
FACE_MAX_M = 12


@dataclass(frozen=True)
class HyperplaneArrangement:
    d: int
    normals: np.ndarray  # (m, d), unit rows
    variant: ConeType | None
    source_n: int
    points: np.ndarray | None = None
    parallel_pairs: tuple = ()

    @property
    def m(self) -> int:
        return self.normals.shape[0]


@dataclass(frozen=True)
class Chamber:
    signs: tuple[int, ...]
    witness: np.ndarray = field(compare=False)


def build_weyl_arrangement(points, variant: ConeType | str) -> HyperplaneArrangement:
    variant = ConeType.parse(variant)
    Y = np.asarray(points, dtype=float)
    if Y.ndim != 2 or Y.shape[0] < 2 or Y.shape[1] < 1:
        raise ValueError("need an (n, d) point array with n >= 2 and d >= 1")
    n, d = Y.shape
    rows = [Y[i] - Y[j] for i, j in combinations(range(n), 2)]
    if variant is ConeType.B:
        rows += [Y[i] + Y[j] for i, j in combinations(range(n), 2)]
        rows += [Y[i] for i in range(n)]
    A = np.array(rows)
    norms = np.linalg.norm(A, axis=1)
    if (norms <= 1e-12).any():
        raise DegenerateSampleError("zero normal in the arrangement")
    A = A / norms[:, None]
    cos = np.abs(A @ A.T)
    iu = np.triu_indices(A.shape[0], 1)
    par = tuple((int(i), int(j)) for i, j in zip(*iu) if cos[i, j] > 1 - PARALLEL_TOL)
    if par:
        log.warning("arrangement has %d parallel normal pairs", len(par))
    A.setflags(write=False)
    Y = Y.copy()
    Y.setflags(write=False)
    return HyperplaneArrangement(d, A, variant, n, Y, par)


def max_margin(normals: np.ndarray, signs) -> tuple[float, np.ndarray]:
    """Largest ``t <= 1`` with ``s_j <a_j, u> >= t`` for some ``u`` in the unit box."""
    m, d = normals.shape
    if m == 0:
        return 1.0, np.zeros(d)
    S = np.asarray(signs, dtype=float)[:, None] * normals
    c = np.zeros(d + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-S, np.ones((m, 1))])
    bounds = [(-1.0, 1.0)] * d + [(None, 1.0)]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(m), bounds=bounds)
    if res.status != "optimal":
        raise LPError(f"chamber LP ended with status {res.status!r}")
    return -res.fun, res.x[:d]


def enumerate_chambers(arr: HyperplaneArrangement, seed: int = 0) -> list[Chamber]:
    """All chambers, by breadth-first sign flips from a random start witness."""
    if arr.m > MAX_HYPERPLANES:
        raise ValueError(f"enumeration is limited to {MAX_HYPERPLANES} hyperplanes, got {arr.m}")
    if arr.variant is not None and arr.d <= arr.source_n:
        expected = chamber_count(stirling_table(arr.variant, arr.source_n), arr.source_n, arr.d).value
        if expected > MAX_CHAMBERS:
            raise ValueError(f"expected {expected} chambers, above the limit {MAX_CHAMBERS}")
    A = arr.normals
    rng = make_rng(seed)
    while True:
        u0 = rng.standard_normal(arr.d)
        vals = A @ u0
        if (np.abs(vals) > MARGIN_TOL).all():
            break
    start = tuple(int(s) for s in np.sign(vals))
    t, w = max_margin(A, start)
    if t <= MARGIN_TOL:
        raise LPError("start chamber failed its own feasibility check")
    chambers = {start: Chamber(start, w)}
    seen = {start}
    queue = deque([start])
    while queue:
        signs = queue.popleft()
        for j in range(arr.m):
            cand = signs[:j] + (-signs[j],) + signs[j + 1:]
            if cand in seen:
                continue
            seen.add(cand)
            t, w = max_margin(A, cand)
            if t > MARGIN_TOL:
                chambers[cand] = Chamber(cand, w)
                queue.append(cand)
                if len(chambers) > MAX_CHAMBERS:
                    raise ValueError(f"more than {MAX_CHAMBERS} chambers")
    return sorted(chambers.values(), key=lambda c: c.signs)


@dataclass(frozen=True)
class VerificationRow:
    seed: int
    distribution: Distribution
    enumerated: int
    expected: int

    @property
    def match(self) -> bool:
        return self.enumerated == self.expected


@dataclass(frozen=True)
class VerificationReport:
    n: int
    d: int
    variant: ConeType
    rows: tuple[VerificationRow, ...]

    @property
    def all_match(self) -> bool:
        return all(r.match for r in self.rows)


def verify_chamber_count(n: int, d: int, variant: ConeType | str, seeds,
                         distributions=(Distribution.STANDARD_GAUSSIAN, Distribution.UNIFORM_SPHERE)
                         ) -> VerificationReport:
    variant = ConeType.parse(variant)
    expected = chamber_count(stirling_table(variant, n), n, d).value
    rows = []
    for dist in distributions:
        for seed in seeds:
            arr = build_weyl_arrangement(sample_points(SamplerConfig(d, n, seed, dist)), variant)
            rows.append(VerificationRow(seed, Distribution.parse(dist), len(enumerate_chambers(arr, seed)), expected))
    return VerificationReport(n, d, variant, tuple(rows))


def _ordering_generators(Y: np.ndarray, perm: np.ndarray, eps: np.ndarray | None, variant: ConeType):
    Z = Y[..., perm, :] if perm.ndim == 1 else np.take_along_axis(Y, perm[..., None], axis=-2)
    if eps is not None:
        Z = Z * eps[..., None]
    return difference_columns(Z, variant)


def sample_chamber_generators(cfg: SamplerConfig, variant: ConeType | str, count: int,
                              rng: np.random.Generator) -> tuple[np.ndarray, int]:
    """Uniform chambers of fresh random arrangements, as generator stacks.

    Row ``i`` of the result holds vectors ``w`` with the chamber equal to
    ``{u : <u, w_j> >= 0}``. Each attempt draws points and a uniform random
    (signed) ordering; it is kept when the ordering is realized by a chamber.
    """
    variant = ConeType.parse(variant)
    out = []
    got = attempts = 0
    B = 4096
    while got < count:
        Y = _draw(rng, cfg.distribution, (B, cfg.n, cfg.d))
        perm = rng.random((B, cfg.n)).argsort(axis=1)
        eps = rng.choice([-1.0, 1.0], size=(B, cfg.n)) if variant is ConeType.B else None
        W = _ordering_generators(Y, perm, eps, variant)
        ok = ~positively_spans(np.swapaxes(W, 1, 2))
        idx = np.flatnonzero(ok)
        take = idx[: count - got]
        out.append(W[take])
        got += take.size
        attempts += B if take.size == idx.size else int(take[-1]) + 1
    return np.concatenate(out), attempts


def _signs_of(arr: HyperplaneArrangement, w: np.ndarray) -> tuple[int, ...]:
    vals = arr.normals @ w
    if (np.abs(vals) <= MARGIN_TOL).any():
        raise LPError("witness lies on a hyperplane")
    return tuple(int(s) for s in np.sign(vals))


def uniform_chamber(arr: HyperplaneArrangement, seed: int, *, method: str = "enumerate",
                    chambers: list[Chamber] | None = None, max_attempts: int = 10**6) -> Chamber:
    """A uniformly chosen chamber of ``arr``.

    ``method="enumerate"`` picks from the full (sorted) chamber list, which may
    be passed in to avoid recomputation. ``method="permutation"`` draws random
    orderings of the source points until one is realized; it needs
    ``arr.points``.
    """
    rng = make_rng(seed)
    if method == "enumerate":
        if chambers is None:
            chambers = enumerate_chambers(arr)
        return chambers[int(rng.integers(len(chambers)))]
    if method != "permutation":
        raise ValueError(f"unknown method {method!r}")
    if arr.points is None or arr.variant is None:
        raise ValueError("permutation sampling needs the source points and type")
    Y = arr.points
    n = Y.shape[0]
    for _ in range(max_attempts):
        perm = rng.permutation(n)
        eps = rng.choice([-1.0, 1.0], size=n) if arr.variant is ConeType.B else None
        W = _ordering_generators(Y, perm, eps, arr.variant)
        if positively_spans(W.T[None])[0]:
            continue
        t, u = max_margin(W.T, np.ones(W.shape[1]))
        if t <= MARGIN_TOL:
            continue
        signs = _signs_of(arr, u)
        t2, w = max_margin(arr.normals, signs)
        return Chamber(signs, w)
    raise RuntimeError(f"no realizable ordering within {max_attempts} attempts")


def lineality_dim(arr: HyperplaneArrangement) -> int:
    return arr.d - int(np.linalg.matrix_rank(arr.normals, tol=1e-9))


def count_chamber_faces(chamber: Chamber, arr: HyperplaneArrangement, k: int) -> int:
    """Number of ``k``-dimensional faces of the closed chamber.

    Faces are the chamber cut with flats of the arrangement: for each flat of
    dimension ``k`` an LP looks for a point of the flat strictly inside every
    hyperplane not containing it. When the chamber has a lineality space,
    faces below its dimension do not exist and are counted as zero.
    """
    d, m = arr.d, arr.m
    if d > FACE_MAX_D or m > FACE_MAX_M:
        raise ValueError(f"face counting needs d <= {FACE_MAX_D} and m <= {FACE_MAX_M}")
    if not 0 <= k <= d:
        raise ValueError(f"k must be in 0..{d}, got {k}")
    if k == d:
        return 1
    A = arr.normals
    lin = lineality_dim(arr)
    if lin > 0 and k < lin:
        log.warning("chamber has a %d-dimensional lineality space; no %d-faces", lin, k)
        return 0
    if k == 0:
        return 1
    s = np.asarray(chamber.signs, dtype=float)
    flats = set()
    count = 0
    for J in combinations(range(m), d - k):
        sub = A[list(J)]
        if np.linalg.matrix_rank(sub, tol=1e-9) < d - k:
            continue
        _, _, vt = np.linalg.svd(sub)
        basis = vt[d - k:].T  # (d, k), spans the flat
        on = tuple(j for j in range(m) if abs(A[j] @ basis).max() <= 1e-9)
        if on in flats:
            continue
        flats.add(on)
        off = [j for j in range(m) if j not in on]
        t, _ = max_margin((A[off] @ basis), s[off])
        if t > MARGIN_TOL:
            count += 1
    return count
