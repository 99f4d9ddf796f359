"""High-dimensional regimes for Weyl cones: finite-n values against their limits.

A :class:`RegimeSpec` fixes how ``d`` (and ``k``) grow with ``n``. Slack terms
of order ``o(log n)`` are realized by rounding to the integer lattice, and
:func:`realize_regime` reports the parameter values actually hit at a given
``n``. Finite values come from the float pmf of ``S_n``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, asdict
from typing import Callable, Iterable

import numpy as np

from weylcone.combinatorics import ConeType
from weylcone.distribution import PmfVector, odd_tail_sum, pmf
from weylcone.functionals import Cone, expected_intrinsic_volumes, expected_statistical_dimension
from weylcone.special import normal_cdf, normal_pdf


class Regime(enum.Enum):
    FACE_RATIO = "face-ratio"
    FACE_LDP = "face-ldp"
    IV_LDP = "iv-ldp"
    IV_LAW = "iv-law"
    QUERMASS_FIXED_K = "quermass-fixed-k"
    QUERMASS_GROWING_K = "quermass-growing-k"
    STAT_DIM = "stat-dim"


class KMode(enum.Enum):
    SUBLINEAR = "sublinear"
    LINEAR = "linear"
    NEAR_N = "near-n"
    CRITICAL = "critical"


@dataclass(frozen=True)
class RegimeSpec:
    """One asymptotic regime.

    ``x`` sets ``n - d ~ sigma x log n``; ``critical=True`` switches IV-law and
    stat-dim regimes to ``d = n - sigma log n + c sqrt(sigma log n)``.
    Face-ratio regimes choose ``k`` through ``k_mode``: ``k = n^beta``
    (sublinear), ``alpha n`` (linear), ``n - n^c`` (near-n) or the critical
    window indexed by ``alpha``.
    """

    kind: Regime
    variant: ConeType
    x: float | None = None
    k_mode: KMode | None = None
    alpha: float | None = None
    c: float | None = None
    y: float | None = None
    k: int | None = None
    critical: bool = False
    beta: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "variant", ConeType.parse(self.variant))
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", Regime(self.kind))
        if isinstance(self.k_mode, str):
            object.__setattr__(self, "k_mode", KMode(self.k_mode))
        self._validate()

    def _validate(self) -> None:
        kind = self.kind
        if self.critical:
            if kind not in (Regime.IV_LAW, Regime.STAT_DIM):
                raise ValueError(f"{kind.value} has no critical regime")
            if self.c is None or not math.isfinite(self.c):
                raise ValueError("critical regime needs a finite c")
            return
        if self.x is None or not self.x >= 0:
            raise ValueError(f"x must be given and >= 0, got {self.x}")
        if self.x == 0 and kind is not Regime.STAT_DIM:
            raise ValueError("x must be > 0")
        if kind is Regime.FACE_RATIO:
            mode = self.k_mode
            if mode is None:
                raise ValueError("face-ratio regime needs k_mode")
            if mode is KMode.LINEAR and (self.alpha is None or not 0 <= self.alpha <= 1):
                raise ValueError(f"linear k-mode needs alpha in [0, 1], got {self.alpha}")
            if mode is KMode.NEAR_N and (self.c is None or not 0 < self.c < 1):
                raise ValueError(f"near-n k-mode needs c in (0, 1), got {self.c}")
            if mode is KMode.CRITICAL and (self.alpha is None or not math.isfinite(self.alpha)):
                raise ValueError("critical k-mode needs a finite alpha")
            if mode is KMode.SUBLINEAR and not 0 < self.beta < 1:
                raise ValueError(f"sublinear exponent must be in (0, 1), got {self.beta}")
        elif kind is Regime.FACE_LDP:
            if self.c is None or not 0 < self.c < 1:
                raise ValueError(f"face-ldp needs c in (0, 1), got {self.c}")
        elif kind is Regime.IV_LDP:
            if self.y is None or not self.y > self.x:
                raise ValueError(f"iv-ldp needs y > x, got x={self.x}, y={self.y}")
        elif kind is Regime.QUERMASS_FIXED_K:
            if self.k is None or self.k < 1:
                raise ValueError(f"quermass-fixed-k needs k >= 1, got {self.k}")
        elif kind is Regime.QUERMASS_GROWING_K:
            if self.y is None or not self.y > 0:
                raise ValueError(f"quermass-growing-k needs y > 0, got {self.y}")

    def params(self) -> dict:
        out = {"kind": self.kind.value, "type": self.variant.value}
        for name in ("x", "alpha", "c", "y", "k"):
            v = getattr(self, name)
            if v is not None:
                out[name] = v
        if self.k_mode is not None:
            out["k_mode"] = self.k_mode.value
        if self.critical:
            out["critical"] = True
        return out


@dataclass(frozen=True)
class RealizedRegime:
    n: int
    d: int
    k: int | None
    realized_x: float
    realized_y: float | None = None
    realized_c: float | None = None
    realized_alpha: float | None = None
    k_requested: int | None = None

    @property
    def clamped(self) -> bool:
        return self.k is not None and self.k != self.k_requested


def _lam(n: int, variant: ConeType) -> float:
    return variant.sigma_float * math.log(n)


def _k_range(kind: Regime, d: int) -> tuple[int, int]:
    if kind in (Regime.FACE_RATIO, Regime.FACE_LDP, Regime.QUERMASS_FIXED_K, Regime.QUERMASS_GROWING_K):
        return 0, d - 1
    return 0, d


def realize_regime(spec: RegimeSpec, n: int) -> RealizedRegime:
    variant = spec.variant
    s = variant.sigma_float
    lam = _lam(n, variant)
    if spec.critical:
        d = n - int(round(lam - spec.c * math.sqrt(lam)))
    else:
        d = n - int(round(spec.x * lam))
    if not 1 <= d <= n - 1:
        raise ValueError(f"n={n} too small for {spec.kind.value}: realized d={d}")
    realized_x = (n - d) / lam
    realized_c = (d - n + lam) / math.sqrt(lam) if spec.critical else None
    k = None
    ry = ra = None
    kind = spec.kind
    if kind is Regime.FACE_RATIO:
        mode = spec.k_mode
        if mode is KMode.SUBLINEAR:
            k = int(round(n**spec.beta))
        elif mode is KMode.LINEAR:
            k = int(round(spec.alpha * n))
        elif mode is KMode.NEAR_N:
            k = n - int(round(n**spec.c))
        else:
            expo = (n - d - spec.alpha * math.sqrt(spec.x * s * math.log(n))) / s
            # exp overflows long before it could matter: k is clamped at 0 anyway
            gap = int(round(math.exp(min(expo, 700.0))))
            k = n - gap
    elif kind is Regime.FACE_LDP:
        k = n - int(round(n**spec.c))
    elif kind is Regime.IV_LDP:
        k = n - int(round(spec.y * lam))
    elif kind is Regime.QUERMASS_FIXED_K:
        k = spec.k
    elif kind is Regime.QUERMASS_GROWING_K:
        k = int(round(spec.y * lam))
    k_requested = k
    if k is not None:
        lo, hi = _k_range(kind, d)
        k = min(max(k, lo), hi)
        if kind is Regime.FACE_LDP or spec.k_mode is KMode.NEAR_N:
            realized_c = math.log(n - k) / math.log(n)
        elif spec.k_mode is KMode.LINEAR:
            ra = k / n
        elif spec.k_mode is KMode.CRITICAL:
            ra = (n - d - s * math.log(n - k)) / math.sqrt(spec.x * s * math.log(n))
        elif kind is Regime.IV_LDP:
            ry = (n - k) / lam
        elif kind is Regime.QUERMASS_GROWING_K:
            ry = k / lam
    return RealizedRegime(n, d, k, realized_x, ry, realized_c, ra, k_requested)


# ---------------------------------------------------------------- finite values


def _odd(n: int, variant: ConeType, m: int) -> float:
    return odd_tail_sum(pmf(n, variant), m)


def face_ratio_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    """``E f_k(G) / binom(n + 1 - 2 sigma, k)`` as a ratio of odd tails."""
    variant = ConeType.parse(variant)
    n, d, k = rr.n, rr.d, rr.k
    return _odd(n - k, variant, n - d) / _odd(n, variant, n - d)


def face_ldp_rate_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    ratio = face_ratio_finite(rr, variant)
    return math.log(ratio) / math.log(rr.n) if ratio > 0 else -math.inf


def iv_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    """``E v_k(G)`` for ``k < d``: ``P[S_n = n-k] / (2 * odd tail at n-d)``."""
    variant = ConeType.parse(variant)
    dist = pmf(rr.n, variant)
    if rr.k == rr.d:
        return 0.5 - odd_tail_sum(dist, rr.n - rr.d + 1) / (2.0 * odd_tail_sum(dist, rr.n - rr.d))
    return dist[rr.n - rr.k] / (2.0 * odd_tail_sum(dist, rr.n - rr.d))


def iv_ldp_rate_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    v = iv_finite(rr, variant)
    return math.log(v) / math.log(rr.n) if v > 0 else -math.inf


def quermass_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    """``2 E U_k(W) = D(n, d-k) / D(n, d)``."""
    variant = ConeType.parse(variant)
    n, d, k = rr.n, rr.d, rr.k
    dist = pmf(n, variant)
    return odd_tail_sum(dist, n - d + k) / odd_tail_sum(dist, n - d)


def stat_dim_finite(rr: RealizedRegime, variant: ConeType | str) -> float:
    return float(expected_statistical_dimension(rr.n, rr.d, variant).value)


def iv_law(n: int, d: int, variant: ConeType | str) -> PmfVector:
    """Law of the intrinsic-volume variable ``X`` on ``{0, ..., d}``.

    The returned vector's ``n`` field is the top of the support, ``d``.
    """
    variant = ConeType.parse(variant)
    table = expected_intrinsic_volumes(n, d, variant, Cone.DUAL_WEYL)
    probs = np.array([float(v) for v in table.values])
    probs.setflags(write=False)
    return PmfVector(d, variant, probs, table.values if table.exact else None)


# ---------------------------------------------------------------- predictions


def _reject_x_one(x: float) -> None:
    if x == 1:
        raise ValueError("x = 1 is a boundary case without a stated limit")


def predict_face_ratio_limit(spec: RegimeSpec) -> float:
    if spec.kind is not Regime.FACE_RATIO:
        raise ValueError("not a face-ratio regime")
    x, mode = spec.x, spec.k_mode
    _reject_x_one(x)
    if x > 1:
        if mode is KMode.SUBLINEAR:
            return 1.0
        if mode is KMode.LINEAR:
            return (1.0 - spec.alpha) ** (x - 1.0)
        if mode is KMode.NEAR_N:
            return 0.0
        raise ValueError("critical k-mode is only defined for x in (0, 1)")
    if mode is KMode.CRITICAL:
        return 1.0 - normal_cdf(spec.alpha)
    if mode is KMode.NEAR_N:
        if spec.c == x:
            raise ValueError("c = x is a boundary case without a stated limit")
        return 1.0 if spec.c > x else 0.0
    raise ValueError(f"{mode.value} k-mode has no stated limit for x in (0, 1)")


def face_ldp_rate(x: float, c: float) -> float:
    _reject_x_one(x)
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c}")
    if x > 1:
        return x * math.log(c) - c + 1.0
    if c == x:
        raise ValueError("c = x is a boundary case without a stated limit")
    if c < x:
        return x - x * math.log(x) + x * math.log(c) - c
    return 0.0


def predict_face_ldp_rate(spec: RegimeSpec) -> float:
    if spec.kind is not Regime.FACE_LDP:
        raise ValueError("not a face-ldp regime")
    return face_ldp_rate(spec.x, spec.c)


def iv_ldp_rate(x: float, y: float) -> float:
    _reject_x_one(x)
    if not y > x:
        raise ValueError(f"need y > x, got x={x}, y={y}")
    if x < 1:
        return y - y * math.log(y) - 1.0
    return x * math.log(x) - y * math.log(y) + y - x


def predict_iv_ldp_rate(spec: RegimeSpec) -> float:
    if spec.kind is not Regime.IV_LDP:
        raise ValueError("not an iv-ldp regime")
    return iv_ldp_rate(spec.x, spec.y)


def predict_quermass_limit(spec: RegimeSpec) -> float:
    """Limit of ``2 E U_k(W)``."""
    if spec.kind is Regime.QUERMASS_FIXED_K:
        _reject_x_one(spec.x)
        return 1.0 if spec.x < 1 else spec.x ** (-spec.variant.sigma_float * spec.k)
    if spec.kind is Regime.QUERMASS_GROWING_K:
        threshold = max(0.0, 1.0 - spec.x)
        if spec.y == threshold:
            raise ValueError("y = max(0, 1 - x) is a boundary case without a stated limit")
        return 1.0 if spec.y < threshold else 0.0
    raise ValueError("not a quermassintegral regime")


def predict_stat_dim(spec: RegimeSpec, n: int) -> float:
    """Predicted leading behaviour of ``E Delta(W)`` at size ``n``."""
    if spec.kind is not Regime.STAT_DIM:
        raise ValueError("not a stat-dim regime")
    s = spec.variant.sigma_float
    lam = s * math.log(n)
    if spec.critical:
        c = spec.c
        return math.sqrt(lam) * (normal_pdf(c) / normal_cdf(-c) - c)
    _reject_x_one(spec.x)
    if spec.x < 1:
        return lam
    xs = spec.x**s
    return (xs + 1.0) / (2.0 * (xs - 1.0))


@dataclass(frozen=True)
class NormalLaw:
    """Standard normal, optionally conditioned on ``{N < upper}``."""

    upper: float | None = None

    def cdf(self, t: float) -> float:
        if self.upper is None:
            return normal_cdf(t)
        if t >= self.upper:
            return 1.0
        return normal_cdf(t) / normal_cdf(self.upper)


@dataclass(frozen=True)
class ZLaw:
    """Fractional linear law on ``{0, 1, 2, ...}`` with base ``q = x^sigma``."""

    x: float
    sigma: float

    @property
    def q(self) -> float:
        return self.x**self.sigma

    def pmf(self, k: int) -> float:
        q = self.q
        if k < 0:
            return 0.0
        if k == 0:
            return (q - 1.0) / (2.0 * q)
        return 0.5 * (q + 1.0) * (q - 1.0) / q * q ** (-k)

    def sf(self, k: int) -> float:
        """``P[Z >= k]``."""
        if k <= 0:
            return 1.0
        return 0.5 * (self.q + 1.0) * self.q ** (-k)

    def pgf(self, s: float) -> float:
        q = self.q
        if not abs(s) < q:
            raise ValueError(f"generating function converges for |s| < {q}, got {s}")
        return (s + 1.0) * (q - 1.0) / (2.0 * (q - s))


def predict_iv_law(spec: RegimeSpec) -> NormalLaw | ZLaw:
    if spec.kind is not Regime.IV_LAW:
        raise ValueError("not an iv-law regime")
    if spec.critical:
        return NormalLaw(upper=spec.c)
    _reject_x_one(spec.x)
    if spec.x < 1:
        return NormalLaw()
    return ZLaw(spec.x, spec.variant.sigma_float)


def iv_law_distance(rr: RealizedRegime, spec: RegimeSpec) -> float:
    """Distance between the finite intrinsic-volume law and its predicted limit.

    Total variation between ``d - X`` and the Z law when ``x > 1``; otherwise
    the Kolmogorov distance of ``(X - (n - sigma log n)) / sqrt(sigma log n)``.
    """
    law = predict_iv_law(spec)
    finite = iv_law(rr.n, rr.d, spec.variant)
    p = finite.probs
    d = rr.d
    if isinstance(law, ZLaw):
        diffs = [abs(p[d - j] - law.pmf(j)) for j in range(d + 1)]
        return 0.5 * (math.fsum(diffs) + law.sf(d + 1))
    lam = _lam(rr.n, spec.variant)
    centre, scale = rr.n - lam, math.sqrt(lam)
    cdf = np.cumsum(p)
    worst, below = 0.0, 0.0
    for k in range(d + 1):
        f = law.cdf((k - centre) / scale)
        worst = max(worst, abs(cdf[k] - f), abs(below - f))
        below = cdf[k]
    return worst


# ---------------------------------------------------------------- sweeps


@dataclass
class ReportRow:
    n: int
    realized: RealizedRegime | None
    finite_value: float | None
    predicted_limit: float | None
    gap: float | None
    error: str | None = None

    def as_dict(self) -> dict:
        out = {"n": self.n, "finite_value": self.finite_value,
               "predicted_limit": self.predicted_limit, "gap": self.gap, "error": self.error}
        if self.realized is not None:
            r = asdict(self.realized)
            r.pop("n")
            r["clamped"] = self.realized.clamped
            out.update(r)
        return out


@dataclass
class ConvergenceReport:
    spec: RegimeSpec
    rows: list[ReportRow] = field(default_factory=list)

    def gaps(self) -> list[float | None]:
        return [r.gap for r in self.rows]

    def as_dict(self) -> dict:
        return {"spec": self.spec.params(), "rows": [r.as_dict() for r in self.rows]}


def evaluate(spec: RegimeSpec, n: int) -> tuple[RealizedRegime, float, float]:
    """Realize ``spec`` at ``n`` and return ``(realized, finite, predicted)``."""
    rr = realize_regime(spec, n)
    v = spec.variant
    kind = spec.kind
    if kind is Regime.FACE_RATIO:
        return rr, face_ratio_finite(rr, v), predict_face_ratio_limit(spec)
    if kind is Regime.FACE_LDP:
        return rr, face_ldp_rate_finite(rr, v), predict_face_ldp_rate(spec)
    if kind is Regime.IV_LDP:
        return rr, iv_ldp_rate_finite(rr, v), predict_iv_ldp_rate(spec)
    if kind is Regime.IV_LAW:
        return rr, iv_law_distance(rr, spec), 0.0
    if kind in (Regime.QUERMASS_FIXED_K, Regime.QUERMASS_GROWING_K):
        return rr, quermass_finite(rr, v), predict_quermass_limit(spec)
    return rr, stat_dim_finite(rr, v), predict_stat_dim(spec, n)


def convergence_sweep(spec: RegimeSpec, n_list: Iterable[int]) -> ConvergenceReport:
    ns = list(n_list)
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("n_list must be strictly increasing")
    report = ConvergenceReport(spec)
    for n in ns:
        try:
            rr, finite, predicted = evaluate(spec, n)
        except (ValueError, ArithmeticError) as exc:
            report.rows.append(ReportRow(n, None, None, None, None, str(exc)))
            continue
        report.rows.append(ReportRow(n, rr, finite, predicted, abs(finite - predicted)))
    return report
