"""The law of ``S_n = sum_{k=1}^n Bern(sigma/k)`` and its asymptotics.

``P[S_n = k] = T(n, k) sigma^n / n!`` where ``T`` is the Stirling triangle of
the matching type. Small ``n`` is handled exactly through the triangle; larger
``n`` by direct float convolution of the Bernoulli factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from weylcone.combinatorics import ConeType, stirling_table
from weylcone.special import normal_cdf, reciprocal_gamma

EXACT_THRESHOLD = 25
HARD_CAP = 50_000


@dataclass(frozen=True, eq=False)
class PmfVector:
    n: int
    variant: ConeType
    probs: np.ndarray
    exact: tuple[Fraction, ...] | None = None

    def __len__(self) -> int:
        return self.n + 1

    def __getitem__(self, k: int) -> float:
        if 0 <= k <= self.n:
            return float(self.probs[k])
        return 0.0


@dataclass(frozen=True)
class MomentSummary:
    n: int
    variant: ConeType
    mean: float
    variance: float


def convolve_bernoulli(n: int, sigma: float) -> np.ndarray:
    """Float pmf of ``S_n`` by multiplying in the factors for k = 1, 2, ..., n."""
    p = np.zeros(n + 1)
    p[0] = 1.0
    for k in range(1, n + 1):
        q = sigma / k
        p[1 : k + 1] = (1.0 - q) * p[1 : k + 1] + q * p[0:k]
        p[0] *= 1.0 - q
    return p


def exact_pmf(n: int, variant: ConeType | str) -> tuple[Fraction, ...]:
    variant = ConeType.parse(variant)
    table = stirling_table(variant, n)
    total = variant.total_mass(n)
    return tuple(Fraction(v, total) for v in table.row(n))


@lru_cache(maxsize=256)
def _pmf_cached(n: int, variant: ConeType) -> PmfVector:
    if n <= EXACT_THRESHOLD:
        exact = exact_pmf(n, variant)
        probs = np.array([float(v) for v in exact])
    else:
        exact = None
        probs = convolve_bernoulli(n, variant.sigma_float)
    probs.setflags(write=False)
    return PmfVector(n, variant, probs, exact)


def pmf(n: int, variant: ConeType | str, *, cap: int = HARD_CAP) -> PmfVector:
    variant = ConeType.parse(variant)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > cap:
        raise ValueError(f"n={n} exceeds the configured cap {cap}")
    return _pmf_cached(n, variant)


def odd_tail_sum(dist: PmfVector, m: int, *, exact: bool = False) -> float | Fraction:
    """``sum_{l = 1, 3, 5, ...} P[S = m + l]``; mass above ``n`` contributes nothing."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if exact:
        if dist.exact is None:
            raise ValueError("exact odd tail requested for a float-mode pmf")
        return sum(dist.exact[m + 1 :: 2], Fraction(0))
    return math.fsum(dist.probs[m + 1 :: 2])


def even_tail_sum(dist: PmfVector, m: int, *, exact: bool = False) -> float | Fraction:
    """``sum_{l = 0, 2, 4, ...} P[S = m + l]``."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if exact:
        if dist.exact is None:
            raise ValueError("exact tail requested for a float-mode pmf")
        return sum(dist.exact[m::2], Fraction(0))
    return math.fsum(dist.probs[m::2])


def moments(n: int, variant: ConeType | str) -> MomentSummary:
    variant = ConeType.parse(variant)
    s = variant.sigma_float
    ps = [s / k for k in range(1, n + 1)]
    return MomentSummary(n, variant, math.fsum(ps), math.fsum(p * (1.0 - p) for p in ps))


def mgf_ratio(n: int, z: float, variant: ConeType | str) -> float:
    """``E[e^{z S_n}] / exp(sigma log(n) (e^z - 1))``, accumulated in log space."""
    variant = ConeType.parse(variant)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not math.isfinite(z):
        raise ValueError(f"z must be finite, got {z}")
    a = variant.sigma_float * math.expm1(z)
    logs = np.log1p(a / np.arange(1, n + 1, dtype=float))
    return math.exp(math.fsum(logs) - a * math.log(n))


def psi_limit(z: float, variant: ConeType | str) -> float:
    """Mod-Poisson limit ``1/Gamma(sigma (e^z + 2 (1 - sigma)))``."""
    variant = ConeType.parse(variant)
    s = variant.sigma_float
    return reciprocal_gamma(s * (math.exp(z) + 2.0 * (1.0 - s)))


def clt_diagnostics(n: int, variant: ConeType | str) -> float:
    """Kolmogorov distance between ``(S_n - sigma log n)/sqrt(sigma log n)`` and N(0,1).

    The distribution function of ``S_n`` is a step function, so the supremum is
    attained at a jump, on one side or the other.
    """
    variant = ConeType.parse(variant)
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    dist = pmf(n, variant)
    lam = variant.sigma_float * math.log(n)
    scale = math.sqrt(lam)
    cdf = np.cumsum(dist.probs)
    worst = 0.0
    below = 0.0
    for k in range(n + 1):
        phi = normal_cdf((k - lam) / scale)
        worst = max(worst, abs(cdf[k] - phi), abs(below - phi))
        below = cdf[k]
        if below >= 1.0 and phi >= 1.0:
            break
    return worst


def rate_function(z: float) -> float:
    """``z log z - z + 1``, extended by continuity to z = 0 and exact at z = 1."""
    if z < 0:
        raise ValueError(f"rate function is defined for z >= 0, got {z}")
    if z == 0.0:
        return 1.0
    if z == 1.0:
        return 0.0
    return z * math.log(z) - z + 1.0


def lattice_point(n: int, z: float, variant: ConeType | str) -> tuple[int, float]:
    """Nearest integer ``m`` to ``z sigma log n`` and the realized ``z_n = m/(sigma log n)``."""
    variant = ConeType.parse(variant)
    lam = variant.sigma_float * math.log(n)
    m = int(round(z * lam))
    return m, m / lam


def _local_prefactor(n: int, z: float, z_n: float, variant: ConeType) -> float:
    return n ** (-rate_function(z_n)) / math.sqrt(2.0 * math.pi * z * math.log(n)) * psi_limit(
        math.log(z), variant
    )


def asymptotic_point(
    n: int, z: float, ell: int, variant: ConeType | str, *, z_n: float | None = None
) -> float:
    """Local approximation of ``P[S_n = z_n sigma log n + ell]``.

    ``z_n`` defaults to the realized lattice value, see :func:`lattice_point`;
    it enters only the power of ``n``.
    """
    variant = ConeType.parse(variant)
    if z <= 0:
        raise ValueError(f"z must be positive, got {z}")
    m, realized = lattice_point(n, z, variant)
    if z_n is None:
        z_n = realized
    if not 0 <= m + ell <= n:
        raise ValueError(f"lattice point {m}+{ell} outside 0..{n}")
    return _local_prefactor(n, z, z_n, variant) * z ** (-variant.sigma_float * ell)


def asymptotic_odd_tail(
    n: int, z: float, variant: ConeType | str, *, z_n: float | None = None
) -> float:
    """Approximation of ``sum_{l odd} P[S_n = z_n sigma log n + l]`` for ``z != 1``."""
    variant = ConeType.parse(variant)
    if z <= 0:
        raise ValueError(f"z must be positive, got {z}")
    if z == 1:
        raise ValueError("no asymptotic odd-tail formula at z = 1")
    if z_n is None:
        z_n = lattice_point(n, z, variant)[1]
    s = variant.sigma_float
    base = _local_prefactor(n, z, z_n, variant)
    if z > 1:
        return base * z**s / (z ** (2 * s) - 1.0)
    return 0.5 - base * z**s / (1.0 - z ** (2 * s))
