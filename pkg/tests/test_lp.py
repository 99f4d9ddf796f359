import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog as scipy_linprog

from weylcone.lp import linprog

# HiGHS presolve misreports some unbounded problems as infeasible, so it is off.
HIGHS = {"presolve": False}
STATUS = {0: "optimal", 2: "infeasible", 3: "unbounded"}


def _random_lp(rng):
    n = int(rng.integers(1, 6))
    m_ub, m_eq = int(rng.integers(0, 5)), int(rng.integers(0, 3))
    c = rng.integers(-3, 4, size=n).astype(float)
    A_ub = rng.integers(-3, 4, size=(m_ub, n)).astype(float) if m_ub else None
    b_ub = rng.integers(-2, 6, size=m_ub).astype(float) if m_ub else None
    A_eq = rng.integers(-3, 4, size=(m_eq, n)).astype(float) if m_eq else None
    b_eq = rng.integers(-2, 4, size=m_eq).astype(float) if m_eq else None
    kinds = [(0, None), (None, None), (-2, 3), (None, 4), (1, None)]
    bounds = [kinds[int(i)] for i in rng.integers(0, len(kinds), size=n)]
    return c, A_ub, b_ub, A_eq, b_eq, bounds


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=300, deadline=None)
def test_matches_highs(seed):
    c, A_ub, b_ub, A_eq, b_eq, bounds = _random_lp(np.random.default_rng(seed))
    ours = linprog(c, A_ub, b_ub, A_eq, b_eq, bounds)
    ref = scipy_linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds,
                        method="highs", options=HIGHS)
    assert ours.status == STATUS[ref.status]
    if ref.status == 0:
        assert ours.fun == pytest.approx(ref.fun, abs=1e-7)
        x = ours.x
        if A_ub is not None:
            assert np.all(A_ub @ x <= b_ub + 1e-7)
        if A_eq is not None:
            assert np.allclose(A_eq @ x, b_eq, atol=1e-7)
        for xi, (lo, hi) in zip(x, bounds):
            assert lo is None or xi >= lo - 1e-9
            assert hi is None or xi <= hi + 1e-9


def test_statuses():
    assert linprog([1.0], [[-1.0]], [-2.0]).fun == pytest.approx(2.0)
    assert linprog([-1.0], [[-1.0]], [-2.0]).status == "unbounded"
    assert linprog([1.0], [[1.0]], [-1.0]).status == "infeasible"
    assert not linprog([1.0], [[1.0]], [-1.0]).success


def test_bounds_forms():
    assert linprog([1.0], bounds=(None, None), A_eq=[[1.0]], b_eq=[-3.0]).x[0] == pytest.approx(-3.0)
    assert linprog([-1.0], bounds=[(None, 4)], A_ub=[[-1.0]], b_ub=[10.0]).x[0] == pytest.approx(4.0)
    assert linprog([1.0, 1.0], bounds=[(-2, 3), (1, None)]).fun == pytest.approx(-1.0)


def test_degenerate_cycling_example():
    # Beale's example cycles under the largest-coefficient rule.
    c = [-0.75, 150, -0.02, 6]
    A = [[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]]
    res = linprog(c, A, [0, 0, 1])
    assert res.status == "optimal" and res.fun == pytest.approx(-0.05)
