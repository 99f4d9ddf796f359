"""Closed-form expected functionals of Weyl cones ``W`` and their duals ``G``.

Values are exact rationals for ``n <= EXACT_MAX_N``. Above that the same
formulas are evaluated through the float pmf of ``S_n``, using
``T(n, j) / D(n, d) = P[S_n = j] / (2 * sum_{l odd} P[S_n = n - d + l])``,
and the table is flagged ``exact=False``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from weylcone.combinatorics import ConeType, chamber_count_value, stirling_table
from weylcone.distribution import odd_tail_sum, pmf

EXACT_MAX_N = 600

Number = Fraction | float


class Cone(enum.Enum):
    WEYL = "weyl"
    DUAL_WEYL = "dual"

    @classmethod
    def parse(cls, value: "Cone | str") -> "Cone":
        if isinstance(value, cls):
            return value
        key = str(value).lower()
        aliases = {"weyl": cls.WEYL, "w": cls.WEYL, "dual": cls.DUAL_WEYL,
                   "dualweyl": cls.DUAL_WEYL, "dual_weyl": cls.DUAL_WEYL, "g": cls.DUAL_WEYL}
        if key not in aliases:
            raise ValueError(f"unknown cone {value!r}, expected 'weyl' or 'dual'")
        return aliases[key]


class Kind(enum.Enum):
    FACE_NUMBERS = "faces"
    INTRINSIC_VOLUMES = "iv"
    QUERMASSINTEGRALS = "quermass"

    @classmethod
    def parse(cls, value: "Kind | str") -> "Kind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown functional kind {value!r}") from None


@dataclass(frozen=True)
class FunctionalTable:
    """Expected values indexed by ``k``; ``values[i]`` belongs to ``ks[i]``."""

    n: int
    d: int
    variant: ConeType
    cone: Cone
    kind: Kind
    ks: tuple[int, ...]
    values: tuple[Number, ...]
    exact: bool = True

    def __getitem__(self, k: int) -> Number:
        try:
            return self.values[self.ks.index(k)]
        except ValueError:
            raise KeyError(f"k={k} outside {self.ks[0]}..{self.ks[-1]}") from None

    def items(self):
        return zip(self.ks, self.values)


@dataclass(frozen=True)
class StatDimValue:
    n: int
    d: int
    variant: ConeType
    value: Number
    exact: bool = True


def _check(n: int, d: int) -> None:
    if d < 1 or d >= n:
        raise ValueError(f"need 1 <= d <= n-1, got n={n}, d={d}")


class _Exact:
    """Exact ``T(n, k)`` and ``D(n, d)`` lookups on the shared triangle."""

    def __init__(self, variant: ConeType, n: int):
        self.table = stirling_table(variant, n)

    def t(self, n: int, k: int) -> int:
        return self.table(n, k)

    def D(self, n: int, d: int) -> int:
        return chamber_count_value(self.table, n, d)


class _Float:
    """Normalized lookups: ``t(n, k) = P[S_n = k]`` and ``D(n, d) = 2 * odd tail``.

    Ratios of these at a common ``n`` equal the exact ratios.
    """

    def __init__(self, variant: ConeType):
        self.variant = variant

    def t(self, n: int, k: int) -> float:
        return pmf(n, self.variant)[k]

    def D(self, n: int, d: int) -> float:
        if d == 0:
            return 0.0
        return 2.0 * odd_tail_sum(pmf(n, self.variant), n - d)


def _source(variant: ConeType, n: int, exact: bool | None):
    if exact is None:
        exact = n <= EXACT_MAX_N
    return (_Exact(variant, n) if exact else _Float(variant)), exact


def _ratio(num, den, exact: bool) -> Number:
    return Fraction(num, den) if exact else num / den


def expected_intrinsic_volumes(
    n: int, d: int, variant: ConeType | str, cone: Cone | str, *, exact: bool | None = None
) -> FunctionalTable:
    variant, cone = ConeType.parse(variant), Cone.parse(cone)
    _check(n, d)
    src, exact = _source(variant, n, exact)
    Dnd = src.D(n, d)
    boundary = _ratio(Dnd - src.D(n, d - 1), 2 * Dnd, exact)
    if cone is Cone.WEYL:
        vals = [boundary] + [_ratio(src.t(n, n - d + k), Dnd, exact) for k in range(1, d + 1)]
    else:
        vals = [_ratio(src.t(n, n - k), Dnd, exact) for k in range(d)] + [boundary]
    return FunctionalTable(n, d, variant, cone, Kind.INTRINSIC_VOLUMES,
                           tuple(range(d + 1)), tuple(vals), exact)


def expected_quermassintegrals(
    n: int, d: int, variant: ConeType | str, cone: Cone | str, *, exact: bool | None = None
) -> FunctionalTable:
    variant, cone = ConeType.parse(variant), Cone.parse(cone)
    _check(n, d)
    src, exact = _source(variant, n, exact)
    Dnd = src.D(n, d)
    if cone is Cone.WEYL:
        ks = range(0, d)
        vals = [_ratio(src.D(n, d - k), 2 * Dnd, exact) for k in ks]
    else:
        ks = range(1, d + 1)
        vals = [_ratio(Dnd - src.D(n, k), 2 * Dnd, exact) for k in ks]
    return FunctionalTable(n, d, variant, cone, Kind.QUERMASSINTEGRALS,
                           tuple(ks), tuple(vals), exact)


def _face_number_exact(n: int, d: int, k: int, variant: ConeType, cone: Cone, src: _Exact) -> Fraction:
    top = n + 1 - (2 if variant is ConeType.A else 1)
    # 1/sigma^j is 1 for type A and 2^j for type B
    inv_sigma = 1 if variant is ConeType.A else 2
    if cone is Cone.WEYL:
        j = d - k
        num = comb(top, j) * src.D(n - j, k) * inv_sigma**j * math.factorial(n)
        den = src.D(n, d) * math.factorial(n - j)
    else:
        num = comb(top, k) * src.D(n - k, d - k) * inv_sigma**k * math.factorial(n)
        den = src.D(n, d) * math.factorial(n - k)
    return Fraction(num, den)


def _face_number_float(n: int, d: int, k: int, variant: ConeType, cone: Cone) -> float:
    # n!/(sigma^j (n-j)!) * D(n-j, .)/D(n, d) equals a ratio of normalized odd tails
    top = n + 1 - (2 if variant is ConeType.A else 1)
    j, dd = (d - k, k) if cone is Cone.WEYL else (k, d - k)
    num = odd_tail_sum(pmf(n - j, variant), n - j - dd)
    den = odd_tail_sum(pmf(n, variant), n - d)
    return comb(top, j) * num / den


def expected_face_numbers(
    n: int, d: int, variant: ConeType | str, cone: Cone | str, *, exact: bool | None = None
) -> FunctionalTable:
    variant, cone = ConeType.parse(variant), Cone.parse(cone)
    _check(n, d)
    src, exact = _source(variant, n, exact)
    ks = range(1, d + 1) if cone is Cone.WEYL else range(0, d)
    if exact:
        vals = [_face_number_exact(n, d, k, variant, cone, src) for k in ks]
    else:
        vals = [_face_number_float(n, d, k, variant, cone) for k in ks]
    return FunctionalTable(n, d, variant, cone, Kind.FACE_NUMBERS, tuple(ks), tuple(vals), exact)


def expected_functional(n, d, variant, cone, kind, *, exact=None) -> FunctionalTable:
    kind = Kind.parse(kind)
    fn = {
        Kind.INTRINSIC_VOLUMES: expected_intrinsic_volumes,
        Kind.QUERMASSINTEGRALS: expected_quermassintegrals,
        Kind.FACE_NUMBERS: expected_face_numbers,
    }[kind]
    return fn(n, d, variant, cone, exact=exact)


def expected_statistical_dimension(
    n: int, d: int, variant: ConeType | str, *, exact: bool | None = None
) -> StatDimValue:
    """``E Delta(W) = sum_{l=0}^{d} (d - l) T(n, n - l) / D(n, d)``.

    The exact path cross-checks the result against ``sum_k k E v_k(W)``.
    """
    variant = ConeType.parse(variant)
    _check(n, d)
    src, exact = _source(variant, n, exact)
    if exact:
        num = sum((d - l) * src.t(n, n - l) for l in range(d + 1))
        value = Fraction(num, src.D(n, d))
        iv = expected_intrinsic_volumes(n, d, variant, Cone.WEYL, exact=True)
        check = sum(k * v for k, v in iv.items())
        if check != value:
            raise ArithmeticError(f"statistical dimension mismatch: {value} != {check}")
    else:
        dist = pmf(n, variant)
        m = n - d
        num = math.fsum((j - m) * dist.probs[j] for j in range(m, n + 1) if dist.probs[j] > 0.0)
        value = num / (2.0 * odd_tail_sum(dist, m))
    return StatDimValue(n, d, variant, value, exact)
