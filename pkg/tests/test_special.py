import math

import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from weylcone.special import gamma, log_gamma, normal_cdf, normal_pdf, reciprocal_gamma

# Reference values from mpmath at 30 digits.
GAMMA_FIXTURES = [
    (0.001, 999.4237724845955),
    (0.1, 9.51350769866873),
    (0.5, 1.772453850905516),
    (1, 1.0),
    (1.5, 0.886226925452758),
    (2.5, 1.329340388179137),
    (3.7, 4.170651783796604),
    (7.25, 1155.3810139199898),
    (10, 362880.0),
    (17.5, 85634974475162.06),
    (25.3, 1.6227771176708765e24),
    (33.3, 7.487577596522633e35),
    (49.9, 4.118011034253036e62),
]


@pytest.mark.parametrize("x,value", GAMMA_FIXTURES)
def test_gamma_against_fixtures(x, value):
    assert gamma(x) == pytest.approx(value, rel=1e-12)
    assert log_gamma(x) == pytest.approx(math.log(value), rel=1e-12, abs=1e-13)


def test_gamma_matches_factorials():
    for n in range(1, 30):
        assert gamma(n) == pytest.approx(math.factorial(n - 1), rel=1e-13)


def test_reciprocal_gamma_large_argument():
    assert reciprocal_gamma(200.0) == pytest.approx(math.exp(-math.lgamma(200.0)), rel=1e-12)
    with pytest.raises(ValueError):
        reciprocal_gamma(0.0)


def test_normal_cdf_values():
    assert normal_cdf(0.0) == 0.5
    ref = 0.5 + quad(normal_pdf, 0.0, 1.96, epsabs=1e-14)[0]
    assert abs(normal_cdf(1.96) - ref) < 1e-12
    assert normal_cdf(math.inf) == 1.0
    assert normal_cdf(-math.inf) == 0.0


@given(st.floats(-40, 40))
def test_normal_cdf_symmetry(x):
    assert abs(normal_cdf(x) + normal_cdf(-x) - 1.0) < 1e-15


def test_normal_cdf_tails_against_quadrature():
    for x in (-6.0, -3.5, -1.0, 0.3, 2.2):
        ref = quad(normal_pdf, -math.inf, x, epsabs=1e-15, epsrel=1e-13)[0]
        assert abs(normal_cdf(x) - ref) < 1e-12
