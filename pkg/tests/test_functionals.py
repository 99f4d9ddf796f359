from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from oracles import SIGMA, stirling_row
from weylcone import ConeType
from weylcone.functionals import (
    Cone, Kind, expected_face_numbers, expected_functional, expected_intrinsic_volumes,
    expected_quermassintegrals, expected_statistical_dimension,
)

F = Fraction


def _D(n, d, v):
    row = stirling_row(n, v)
    return 2 * sum(row[k] for k in range(n - d + 1, n + 1, 2)) if d > 0 else 0


def test_intrinsic_volume_examples():
    assert expected_intrinsic_volumes(3, 2, "A", "weyl").values == (F(1, 3), F(1, 2), F(1, 6))
    assert expected_intrinsic_volumes(3, 2, "A", "dual").values == (F(1, 6), F(1, 2), F(1, 3))


def test_quermassintegral_examples():
    assert expected_quermassintegrals(3, 2, "A", "weyl")[1] == F(1, 6)
    assert expected_quermassintegrals(3, 2, "A", "dual")[2] == 0
    assert expected_quermassintegrals(4, 2, "A", "weyl")[0] == F(1, 2)


def test_face_number_examples():
    assert expected_face_numbers(3, 2, "A", "dual")[1] == 2
    assert expected_face_numbers(3, 2, "A", "weyl")[2] == 1
    assert expected_face_numbers(3, 2, "A", "weyl")[1] == 2


def test_statistical_dimension_example():
    v = expected_statistical_dimension(3, 2, "A")
    assert v.value == F(5, 6) and v.exact


def test_invalid_dimensions():
    for n, d in ((3, 0), (3, 3), (3, 4)):
        with pytest.raises(ValueError):
            expected_intrinsic_volumes(n, d, "A", "weyl")


def test_weyl_intrinsic_volumes_against_stirling_oracle():
    # v_k(W) = T(n, n-d+k) / D(n, d) for k >= 1
    for v in "AB":
        for n in range(2, 13):
            for d in range(1, n):
                got = expected_intrinsic_volumes(n, d, v, "weyl").values
                D = _D(n, d, v)
                row = stirling_row(n, v)
                for k in range(1, d + 1):
                    assert got[k] == F(row[n - d + k], D)


def test_dual_face_numbers_against_stirling_oracle():
    for v in "AB":
        s = SIGMA[v]
        top = lambda n: n + 1 - 2 * s  # noqa: E731
        for n in range(3, 11):
            for d in range(2, n):
                got = expected_face_numbers(n, d, v, "dual")
                for k in range(1, d):
                    ref = comb(int(top(n)), k) * F(factorial(n), factorial(n - k)) / s**k \
                        * F(_D(n - k, d - k, v), _D(n, d, v))
                    assert got[k] == ref


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 60), st.data())
def test_structural_invariants(n, data):
    d = data.draw(st.integers(1, n - 1))
    v = data.draw(st.sampled_from(list(ConeType)))
    w = expected_intrinsic_volumes(n, d, v, "weyl").values
    g = expected_intrinsic_volumes(n, d, v, "dual").values
    assert sum(w) == 1 and sum(g) == 1
    assert all(x >= 0 for x in w + g)
    # duality of intrinsic volumes
    assert all(g[k] == w[d - k] for k in range(d + 1))
    q = expected_quermassintegrals(n, d, v, "weyl").values
    assert all(0 <= 2 * x <= 1 for x in q)
    assert all(a >= b for a, b in zip(q, q[1:]))
    top = n + 1 - 2 * v.sigma
    faces = expected_face_numbers(n, d, v, "dual")
    assert all(0 <= x <= comb(int(top), k) for k, x in faces.items())
    sd = expected_statistical_dimension(n, d, v).value
    assert 0 <= sd <= d
    assert sd == sum(k * x for k, x in enumerate(w))


def test_float_path_matches_exact():
    for v in ConeType:
        for cone in Cone:
            for kind in Kind:
                ex = expected_functional(40, 17, v, cone, kind, exact=True)
                fl = expected_functional(40, 17, v, cone, kind, exact=False)
                assert not fl.exact
                for a, b in zip(ex.values, fl.values):
                    assert float(a) == pytest.approx(b, rel=1e-9, abs=1e-300)
        a = expected_statistical_dimension(40, 17, v, exact=True).value
        b = expected_statistical_dimension(40, 17, v, exact=False).value
        assert float(a) == pytest.approx(b, rel=1e-9)


def test_large_n_switches_to_float():
    t = expected_intrinsic_volumes(700, 690, "A", "dual")
    assert not t.exact
    assert sum(t.values) == pytest.approx(1.0, abs=1e-12)
