from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from weylcone.arrangement import (
    Chamber, build_weyl_arrangement, count_chamber_faces, enumerate_chambers, lineality_dim,
    uniform_chamber, verify_chamber_count,
)
from weylcone.combinatorics import chamber_count, stirling_table
from weylcone.functionals import expected_face_numbers
from weylcone.geometry import DegenerateSampleError, SamplerConfig, sample_points


def _arr(n, d, v, seed=0, dist="gaussian"):
    return build_weyl_arrangement(sample_points(SamplerConfig(d, n, seed, dist)), v)


def test_build_examples():
    assert _arr(3, 2, "A").m == 3
    assert _arr(2, 2, "B").m == 4
    arr = _arr(3, 3, "A")
    assert arr.m == 3 and lineality_dim(arr) == 1
    assert np.allclose(np.linalg.norm(arr.normals, axis=1), 1.0)
    assert _arr(4, 3, "B").m == 16 and arr.parallel_pairs == ()
    with pytest.raises(DegenerateSampleError):
        build_weyl_arrangement(np.ones((2, 2)), "A")
    with pytest.raises(ValueError):
        build_weyl_arrangement(np.ones((1, 2)), "A")


@pytest.mark.parametrize("n,d,v,count", [(3, 2, "A", 6), (3, 3, "A", 6), (2, 2, "B", 8), (4, 2, "A", 12),
                                         (3, 2, "B", 18), (5, 3, "A", 72), (3, 3, "B", 48)])
def test_enumeration_counts(n, d, v, count):
    assert chamber_count(stirling_table(v, n), n, d).value == count
    assert len(enumerate_chambers(_arr(n, d, v))) == count


def test_planar_lines():
    # three generic lines through the origin give six chambers
    assert len(enumerate_chambers(_arr(3, 2, "A", seed=7, dist="sphere"))) == 6


@pytest.mark.parametrize("n,d,v", [(3, 2, "A"), (4, 2, "A"), (3, 2, "B")])
def test_verify_chamber_count(n, d, v):
    rep = verify_chamber_count(n, d, v, range(5))
    assert rep.all_match and len(rep.rows) == 10


@pytest.mark.parametrize("n,d,v", [(4, 3, "A"), (3, 2, "B"), (5, 2, "A")])
def test_start_independence_and_witnesses(n, d, v):
    arr = _arr(n, d, v, seed=3)
    sets = [{c.signs for c in enumerate_chambers(arr, seed=s)} for s in (0, 1, 2)]
    assert sets[0] == sets[1] == sets[2]
    for c in enumerate_chambers(arr):
        vals = np.asarray(c.signs) * (arr.normals @ c.witness)
        assert vals.min() > 1e-9


def test_guards():
    with pytest.raises(ValueError):
        enumerate_chambers(_arr(10, 3, "A"))


def test_uniform_chamber_enumerate():
    arr = _arr(3, 2, "A")
    chambers = enumerate_chambers(arr)
    N = 10**4
    freq = Counter(uniform_chamber(arr, s, chambers=chambers).signs for s in range(N))
    p = 1 / 6
    assert len(freq) == 6
    for c in freq.values():
        assert abs(c / N - p) <= 3 * np.sqrt(p * (1 - p) / N)
    assert uniform_chamber(arr, 4) == uniform_chamber(arr, 4)


def test_single_hyperplane():
    arr = build_weyl_arrangement(np.array([[1.0, 0.5], [-0.3, 2.0]]), "A")
    chambers = enumerate_chambers(arr)
    assert len(chambers) == 2
    freq = Counter(uniform_chamber(arr, s, chambers=chambers).signs for s in range(4000))
    assert all(abs(c / 4000 - 0.5) < 3 * np.sqrt(0.25 / 4000) for c in freq.values())


@pytest.mark.parametrize("n,d,v", [(3, 2, "A"), (4, 2, "B")])
def test_uniform_chamber_permutation(n, d, v):
    arr = _arr(n, d, v, seed=1)
    chambers = enumerate_chambers(arr)
    N = 4000
    freq = Counter(uniform_chamber(arr, s, method="permutation").signs for s in range(N))
    assert set(freq) <= {c.signs for c in chambers}
    p = 1 / len(chambers)
    assert len(freq) == len(chambers)
    for c in freq.values():
        assert abs(c / N - p) <= 4 * np.sqrt(p * (1 - p) / N)
    with pytest.raises(ValueError):
        uniform_chamber(arr, 0, method="shuffle")


@pytest.mark.parametrize("n,d,v", [(3, 2, "A"), (4, 2, "A"), (4, 3, "A"), (5, 3, "A"), (3, 2, "B"), (3, 1, "B")])
def test_face_averages_equal_exact(n, d, v):
    arr = _arr(n, d, v, seed=2)
    chambers = enumerate_chambers(arr)
    exact = expected_face_numbers(n, d, v, "weyl")
    for k in range(1, d + 1):
        avg = Fraction(sum(count_chamber_faces(c, arr, k) for c in chambers), len(chambers))
        assert avg == exact[k]


def test_face_count_edges():
    arr = _arr(3, 2, "A")
    c = enumerate_chambers(arr)[0]
    assert count_chamber_faces(c, arr, 1) == 2
    assert count_chamber_faces(c, arr, 2) == 1
    assert count_chamber_faces(c, arr, 0) == 1
    # common invariant line: chambers are not pointed
    arr3 = _arr(3, 3, "A")
    assert count_chamber_faces(enumerate_chambers(arr3)[0], arr3, 0) == 0
    with pytest.raises(ValueError):
        count_chamber_faces(c, _arr(6, 2, "A"), 1)
    with pytest.raises(ValueError):
        count_chamber_faces(c, arr, 3)
    assert isinstance(c, Chamber)
