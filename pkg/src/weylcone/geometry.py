"""Random point sets, dual Weyl cones and single-cone geometric tests.

Random streams: a seed is a 64-bit unsigned integer fed to
``numpy.random.SeedSequence``; generators are PCG64. Independent streams for
the same seed come from ``SeedSequence(seed, spawn_key=(i,))``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from weylcone.combinatorics import ConeType
from weylcone.lp import LPError, linprog
from weylcone.nnls import ACTIVE_TOL, nnls

FEAS_TOL = 1e-9
RANK_TOL = 1e-9
ZERO_COLUMN_TOL = 1e-12
FACE_GUARD = 14
SEED_MAX = 2**64 - 1


class DegenerateSampleError(ValueError):
    """A measure-zero configuration was drawn; callers redraw."""


class NonPointedConeError(ValueError):
    pass


class Distribution(enum.Enum):
    STANDARD_GAUSSIAN = "gaussian"
    UNIFORM_SPHERE = "sphere"

    @classmethod
    def parse(cls, value) -> "Distribution":
        if isinstance(value, cls):
            return value
        v = str(value).strip().lower()
        aliases = {"gaussian": cls.STANDARD_GAUSSIAN, "normal": cls.STANDARD_GAUSSIAN,
                   "standardgaussian": cls.STANDARD_GAUSSIAN,
                   "sphere": cls.UNIFORM_SPHERE, "uniformsphere": cls.UNIFORM_SPHERE}
        if v not in aliases:
            raise ValueError(f"unknown distribution {value!r}")
        return aliases[v]


class Provenance(enum.Enum):
    TYPE_A_DIFFERENCES = "type-a-differences"
    TYPE_B_DIFFERENCES_PLUS_LAST = "type-b-differences-plus-last"
    EXPLICIT = "explicit"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    if not 0 <= int(seed) <= SEED_MAX:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=tuple(stream))))


@dataclass(frozen=True)
class SamplerConfig:
    d: int
    n: int
    seed: int = 0
    distribution: Distribution = Distribution.STANDARD_GAUSSIAN

    def __post_init__(self):
        object.__setattr__(self, "distribution", Distribution.parse(self.distribution))
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.seed <= SEED_MAX:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class ConeGenerators:
    """Generators of a polyhedral cone, stored as the columns of a ``d x m`` array."""

    columns: np.ndarray
    variant: ConeType | None = None
    provenance: Provenance = Provenance.EXPLICIT

    def __post_init__(self):
        cols = np.array(self.columns, dtype=float)
        if cols.ndim == 1:
            cols = cols[:, None]
        if cols.ndim != 2 or cols.shape[1] == 0:
            raise ValueError("need a non-empty d x m generator array")
        if (np.linalg.norm(cols, axis=0) <= ZERO_COLUMN_TOL).any():
            raise DegenerateSampleError("zero generator column")
        cols.setflags(write=False)
        object.__setattr__(self, "columns", cols)

    @property
    def d(self) -> int:
        return self.columns.shape[0]

    @property
    def m(self) -> int:
        return self.columns.shape[1]

    @classmethod
    def explicit(cls, vectors) -> "ConeGenerators":
        """Cone generated by the given vectors (one per row)."""
        return cls(np.asarray(vectors, dtype=float).T)


@dataclass(frozen=True)
class ProjectionResult:
    projection: np.ndarray
    coefficients: np.ndarray
    face_dimension: int


def _draw(rng: np.random.Generator, distribution: Distribution, shape) -> np.ndarray:
    pts = rng.standard_normal(shape)
    if distribution is Distribution.UNIFORM_SPHERE:
        pts /= np.linalg.norm(pts, axis=-1, keepdims=True)
    return pts


def sample_points(cfg: SamplerConfig, rng: np.random.Generator | None = None) -> np.ndarray:
    """``n`` i.i.d. points in R^d as an ``(n, d)`` array."""
    rng = make_rng(cfg.seed) if rng is None else rng
    return _draw(rng, cfg.distribution, (cfg.n, cfg.d))


def difference_columns(points: np.ndarray, variant: ConeType) -> np.ndarray:
    """Generator columns from stacked points (``(..., n, d)`` -> ``(..., d, m)``)."""
    diffs = points[..., :-1, :] - points[..., 1:, :]
    if variant is ConeType.B:
        diffs = np.concatenate([diffs, points[..., -1:, :]], axis=-2)
    return np.swapaxes(diffs, -1, -2)


def build_generators(points, variant: ConeType | str) -> ConeGenerators:
    variant = ConeType.parse(variant)
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("points must be an (n, d) array")
    need = 2 if variant is ConeType.A else 1
    if pts.shape[0] < need:
        raise ValueError(f"type {variant.value} needs at least {need} points")
    prov = Provenance.TYPE_A_DIFFERENCES if variant is ConeType.A else Provenance.TYPE_B_DIFFERENCES_PLUS_LAST
    return ConeGenerators(difference_columns(pts, variant), variant, prov)


def _solve(c, **kw):
    res = linprog(c, **kw)
    if res.status != "optimal":
        raise LPError(f"LP ended with status {res.status!r}")
    return res


def _polar_is_trivial(V: np.ndarray) -> bool:
    """True iff ``{u : V^T u <= 0}`` is ``{0}``, via 2d box-bounded LPs."""
    d = V.shape[0]
    for j in range(d):
        for s in (1.0, -1.0):
            c = np.zeros(d)
            c[j] = -s  # maximize s * u_j
            res = _solve(c, A_ub=V.T, b_ub=np.zeros(V.shape[1]), bounds=(-1.0, 1.0))
            if -res.fun > FEAS_TOL:
                return False
    return True


def is_full_space(gens: ConeGenerators) -> bool:
    """Whether the generators positively span all of R^d."""
    return _polar_is_trivial(gens.columns)


def sample_dual_weyl_cone(cfg: SamplerConfig, variant: ConeType | str, *, max_attempts: int = 10**6,
                          rng: np.random.Generator | None = None) -> tuple[ConeGenerators, int]:
    """Rejection-sample the dual Weyl cone: redraw until the hull is not R^d."""
    variant = ConeType.parse(variant)
    rng = make_rng(cfg.seed) if rng is None else rng
    for attempt in range(1, max_attempts + 1):
        try:
            gens = build_generators(sample_points(cfg, rng), variant)
        except DegenerateSampleError:
            continue
        if not is_full_space(gens):
            return gens, attempt
    raise RuntimeError(f"no admissible cone within {max_attempts} attempts "
                       f"(n={cfg.n}, d={cfg.d}, type {variant.value})")


def is_pointed(gens: ConeGenerators) -> bool:
    """False iff some nonzero nonnegative combination of generators vanishes."""
    V = gens.columns
    m = gens.m
    res = linprog(np.zeros(m), A_eq=np.vstack([V, np.ones((1, m))]),
                  b_eq=np.concatenate([np.zeros(gens.d), [1.0]]))
    if res.status not in ("optimal", "infeasible"):
        raise LPError(f"pointedness LP ended with status {res.status!r}")
    return res.status == "infeasible"


def is_face(gens: ConeGenerators, subset) -> bool:
    """Whether ``pos`` of ``subset`` is a face of dimension ``len(subset)``."""
    V = gens.columns
    S = list(subset)
    rest = [i for i in range(gens.m) if i not in S]
    if np.linalg.matrix_rank(V[:, S], tol=RANK_TOL) != len(S):
        return False
    d = gens.d
    kw = {"bounds": (None, None)}
    if S:
        kw.update(A_eq=V[:, S].T, b_eq=np.zeros(len(S)))
    if rest:
        kw.update(A_ub=V[:, rest].T, b_ub=-np.ones(len(rest)))
    res = linprog(np.zeros(d), **kw)
    if res.status not in ("optimal", "infeasible"):
        raise LPError(f"face LP for subset {S} ended with status {res.status!r}")
    return res.status == "optimal"


def count_faces(gens: ConeGenerators, k: int) -> int:
    """Number of ``k``-faces of a pointed polyhedral cone, by LP per subset."""
    if not 1 <= k <= gens.d - 1:
        raise ValueError(f"k must be in 1..{gens.d - 1}, got {k}")
    if gens.m > FACE_GUARD:
        raise ValueError(f"face counting is limited to m <= {FACE_GUARD} generators, got {gens.m}")
    if not is_pointed(gens):
        raise NonPointedConeError("cone contains a line; faces are not counted")
    return sum(is_face(gens, S) for S in combinations(range(gens.m), k))


def metric_projection(gens: ConeGenerators, point) -> ProjectionResult:
    x = np.asarray(point, dtype=float).ravel()
    if x.size != gens.d or not np.all(np.isfinite(x)):
        raise ValueError("point must be a finite d-vector")
    V = gens.columns
    lam, _ = nnls(V, x)
    active = lam > ACTIVE_TOL
    dim = int(np.linalg.matrix_rank(V[:, active], tol=RANK_TOL)) if active.any() else 0
    return ProjectionResult(V @ lam, lam, dim)


def dual_generators(gens: ConeGenerators) -> ConeGenerators:
    """Extreme rays of the polar ``{u : <u, v_i> <= 0}`` of a full-dimensional cone.

    Rays are normals to ``d-1`` generators that keep every other generator
    on the nonpositive side. Intended for ``d <= 3`` and generic input.
    """
    V = gens.columns
    d, m = V.shape
    if d == 1:
        signs = np.sign(V[0])
        rays = [np.array([-s]) for s in (1.0, -1.0) if (signs == s).all()]
        if not rays:
            raise ValueError("polar cone is {0}")
        return ConeGenerators(np.array(rays).T)
    from weylcone.kernels import cofactor_normals

    rays = []
    for J in combinations(range(m), d - 1):
        u = cofactor_normals(V[:, list(J)].T[None])[0]
        nrm = np.linalg.norm(u)
        if nrm <= RANK_TOL:
            continue
        u /= nrm
        for s in (1.0, -1.0):
            if (s * (u @ V) <= FEAS_TOL).all():
                rays.append(s * u)
    if not rays:
        raise ValueError("polar cone is {0}")
    return ConeGenerators(np.array(rays).T)


def subspace_meets_cone(gens: ConeGenerators, basis, *, polar: bool = False,
                        rng: np.random.Generator | None = None) -> bool:
    """Whether the cone meets ``span(basis)`` (columns, orthonormal) in a nonzero point.

    With ``polar=True`` the cone is ``{u : <u, v_i> <= 0}`` instead of ``pos(V)``.
    """
    V = gens.columns
    d = gens.d
    B = np.asarray(basis, dtype=float).reshape(d, -1)
    if B.shape[1] == 0:
        return False
    if polar:
        return not _polar_is_trivial(B.T @ V)
    Q, _ = np.linalg.qr(B, mode="complete")
    perp = Q[:, B.shape[1]:]
    m = gens.m
    A_eq = np.vstack([perp.T @ V, np.ones((1, m))]) if perp.shape[1] else np.ones((1, m))
    b_eq = np.concatenate([np.zeros(perp.shape[1]), [1.0]])
    res = linprog(np.zeros(m), A_eq=A_eq, b_eq=b_eq)
    if res.status == "infeasible":
        return False
    if res.status != "optimal":
        raise LPError(f"subspace LP ended with status {res.status!r}")
    if np.linalg.norm(V @ res.x) > FEAS_TOL:
        return True
    # feasible point collapsed to the origin: try to push away along L both ways
    rng = make_rng(0) if rng is None else rng
    direction = B @ rng.standard_normal(B.shape[1])
    for s in (1.0, -1.0):
        r = linprog(-s * (direction @ V), A_eq=A_eq, b_eq=b_eq)
        if r.status == "optimal" and np.linalg.norm(V @ r.x) > FEAS_TOL:
            return True
    return False
