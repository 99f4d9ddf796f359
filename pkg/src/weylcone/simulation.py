"""Monte Carlo estimators for random Weyl cones and their duals.

Cones are drawn in batches and accepted with the vectorized spanning test,
so a fixed seed always yields the same accepted sequence regardless of how
many samples are requested later on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from weylcone.combinatorics import ConeType
from weylcone.geometry import (
    ConeGenerators, SamplerConfig, _draw, difference_columns, make_rng, metric_projection,
)
from weylcone.kernels import (
    face_counts, haar_orthogonal, meets_subspace, positively_spans, projection_face_dims,
)

BATCH = 4096


class ConeSource(enum.Enum):
    DUAL_WEYL = "dual"
    WEYL_CHAMBER = "weyl"

    @classmethod
    def parse(cls, value) -> "ConeSource":
        if isinstance(value, cls):
            return value
        v = str(value).strip().lower().replace("_", "").replace("-", "")
        for member, names in ((cls.DUAL_WEYL, ("dual", "dualweyl", "g")),
                              (cls.WEYL_CHAMBER, ("weyl", "weylchamber", "chamber", "w"))):
            if v in names:
                return member
        raise ValueError(f"unknown cone source {value!r}")


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    samples: int
    accepted_fraction: float | None
    seed: int

    def within(self, target: float, z: float = 3.0) -> bool:
        return abs(self.mean - float(target)) <= z * self.stderr


def estimate_from(values: np.ndarray, seed: int, accepted_fraction: float | None = None) -> MCEstimate:
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        raise ValueError("need at least two samples")
    return MCEstimate(float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size)),
                      int(values.size), accepted_fraction, seed)


def accepted_cones(cfg: SamplerConfig, variant: ConeType | str, count: int,
                   rng: np.random.Generator) -> tuple[np.ndarray, int]:
    """``count`` dual Weyl cones as a ``(count, d, m)`` stack, plus attempts used."""
    variant = ConeType.parse(variant)
    out = []
    got = attempts = 0
    while got < count:
        pts = _draw(rng, cfg.distribution, (BATCH, cfg.n, cfg.d))
        V = difference_columns(pts, variant)
        ok = ~positively_spans(np.swapaxes(V, 1, 2))
        idx = np.flatnonzero(ok)
        take = idx[: count - got]
        out.append(V[take])
        got += take.size
        attempts += BATCH if take.size == idx.size else int(take[-1]) + 1
    return np.concatenate(out), attempts


def _resolve_unassigned(V, g, dims):
    bad = np.flatnonzero(dims < 0)
    for i in bad:
        dims[i] = metric_projection(ConeGenerators(V[i]), g[i]).face_dimension
    return dims


def mc_intrinsic_volumes(cfg: SamplerConfig, variant: ConeType | str, cone_samples: int,
                         gaussians_per_cone: int = 1) -> list[MCEstimate]:
    """Estimates of the expected intrinsic volumes ``E v_k(G)``, ``k = 0..d``."""
    if cone_samples < 2 or gaussians_per_cone < 1:
        raise ValueError("need cone_samples >= 2 and gaussians_per_cone >= 1")
    rng = make_rng(cfg.seed)
    V, attempts = accepted_cones(cfg, variant, cone_samples, rng)
    d = cfg.d
    hist = np.zeros((cone_samples, d + 1))
    for _ in range(gaussians_per_cone):
        g = rng.standard_normal((cone_samples, d))
        dims, _ = projection_face_dims(V, g)
        dims = _resolve_unassigned(V, g, dims)
        hist[np.arange(cone_samples), dims] += 1
    hist /= gaussians_per_cone
    frac = cone_samples / attempts
    return [estimate_from(hist[:, k], cfg.seed, frac) for k in range(d + 1)]


def mc_face_numbers(cfg: SamplerConfig, variant: ConeType | str, k: int, samples: int) -> MCEstimate:
    """Estimate of ``E f_k(G)``."""
    if samples < 2:
        raise ValueError("need samples >= 2")
    rng = make_rng(cfg.seed)
    V, attempts = accepted_cones(cfg, variant, samples, rng)
    if V.shape[2] > 14:
        raise ValueError("face counting is limited to m <= 14 generators")
    return estimate_from(face_counts(V, k), cfg.seed, samples / attempts)


def mc_quermassintegral(cfg: SamplerConfig, variant: ConeType | str, k: int,
                        cone_source: ConeSource | str, samples: int) -> MCEstimate:
    """Estimate of ``E U_k`` for the dual Weyl cone or the Weyl chamber.

    ``U_k`` is half the probability that the cone meets a uniform random
    ``(d-k)``-dimensional subspace in a nonzero point.
    """
    source = ConeSource.parse(cone_source)
    if not 0 <= k <= cfg.d:
        raise ValueError(f"k must be in 0..{cfg.d}, got {k}")
    if samples < 2:
        raise ValueError("need samples >= 2")
    rng = make_rng(cfg.seed)
    V, attempts = accepted_cones(cfg, variant, samples, rng)
    Q = haar_orthogonal(rng, samples, cfg.d)
    hits = meets_subspace(V, Q, k, weyl=source is ConeSource.WEYL_CHAMBER)
    return estimate_from(0.5 * hits, cfg.seed, samples / attempts)


def mc_statistical_dimension(cfg: SamplerConfig, variant: ConeType | str, samples: int,
                             estimator: str = "faces") -> MCEstimate:
    """Estimate of ``E Delta(W)`` for the Weyl random cone.

    Chambers come from :func:`weylcone.arrangement.sample_chamber_generators`.
    ``estimator="faces"`` averages the face dimension of the Gaussian
    projection; ``"norm"`` averages its squared length instead.
    """
    from weylcone.arrangement import sample_chamber_generators

    if samples < 2:
        raise ValueError("need samples >= 2")
    if estimator not in ("faces", "norm"):
        raise ValueError(f"unknown estimator {estimator!r}")
    rng = make_rng(cfg.seed)
    W, attempts = sample_chamber_generators(cfg, variant, samples, rng)
    g = rng.standard_normal((samples, cfg.d))
    # the chamber is {u : <u, w_i> >= 0}; its polar is pos(-w)
    polar = -W
    dims, proj = projection_face_dims(polar, g)
    bad = np.flatnonzero(dims < 0)
    for i in bad:
        res = metric_projection(ConeGenerators(polar[i]), g[i])
        dims[i], proj[i] = res.face_dimension, res.projection
    if estimator == "faces":
        values = cfg.d - dims
    else:
        values = np.sum((g - proj) ** 2, axis=1)
    return estimate_from(values, cfg.seed, samples / attempts)
