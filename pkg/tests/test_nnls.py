from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylcone.nnls import NNLSError, nnls


def brute_force(A, b):
    # scipy's nnls is unreliable on some versions; enumerate supports instead
    best = (np.zeros(A.shape[1]), float(np.linalg.norm(b)))
    for r in range(1, A.shape[1] + 1):
        for S in combinations(range(A.shape[1]), r):
            z, *_ = np.linalg.lstsq(A[:, S], b, rcond=None)
            if np.all(z >= 0):
                x = np.zeros(A.shape[1])
                x[list(S)] = z
                rn = float(np.linalg.norm(A @ x - b))
                if rn < best[1] - 1e-12:
                    best = (x, rn)
    return best


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=200, deadline=None)
def test_matches_subset_enumeration_and_kkt(seed):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(1, 7)), int(rng.integers(1, 7))
    A, b = rng.standard_normal((m, n)), rng.standard_normal(m)
    x, rnorm = nnls(A, b)
    _, ref = brute_force(A, b)
    assert rnorm == pytest.approx(ref, abs=1e-9)
    assert rnorm == pytest.approx(np.linalg.norm(A @ x - b), abs=1e-12)
    w = A.T @ (b - A @ x)
    assert np.all(x >= 0)
    assert np.all(w <= 1e-9)
    assert np.all(np.abs(w[x > 1e-12]) <= 1e-8)


def test_simple_cases():
    x, r = nnls(np.eye(2), np.array([1.0, -2.0]))
    assert np.allclose(x, [1.0, 0.0]) and r == pytest.approx(2.0)
    x, r = nnls(np.zeros((2, 2)), np.array([1.0, 1.0]))
    assert np.all(x == 0) and r == pytest.approx(np.sqrt(2))


def test_iteration_cap():
    rng = np.random.default_rng(0)
    with pytest.raises(NNLSError):
        nnls(rng.standard_normal((6, 6)), rng.standard_normal(6), max_iter=0)
