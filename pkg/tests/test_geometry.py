from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylcone.geometry import (
    ConeGenerators, DegenerateSampleError, Distribution, NonPointedConeError, Provenance,
    SamplerConfig, build_generators, count_faces, dual_generators, is_full_space, is_pointed,
    make_rng, metric_projection, sample_dual_weyl_cone, sample_points, subspace_meets_cone,
)
from weylcone.kernels import (
    face_counts, haar_orthogonal, meets_subspace, positively_spans, projection_face_dims,
)

seeds = st.integers(0, 2**32 - 1)


def test_sampling_determinism_and_laws():
    cfg = SamplerConfig(d=3, n=5, seed=11)
    assert np.array_equal(sample_points(cfg), sample_points(cfg))
    assert sample_points(cfg).shape == (5, 3)
    sph = sample_points(SamplerConfig(d=4, n=50, seed=1, distribution="sphere"))
    assert np.allclose(np.linalg.norm(sph, axis=1), 1.0, atol=1e-12)
    x = sample_points(SamplerConfig(d=1, n=10**4, seed=3))
    assert abs(x.mean()) < 4 / np.sqrt(10**4)


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(d=0, n=3)
    with pytest.raises(ValueError):
        SamplerConfig(d=2, n=3, seed=-1)
    with pytest.raises(ValueError):
        Distribution.parse("cauchy")
    with pytest.raises(ValueError):
        make_rng(2**64)


def test_build_generators():
    p = np.array([[1.0, 2.0], [3.0, 5.0]])
    a = build_generators(p, "A")
    assert np.allclose(a.columns, [[-2.0], [-3.0]]) and a.provenance is Provenance.TYPE_A_DIFFERENCES
    b = build_generators(p, "B")
    assert np.allclose(b.columns, [[-2.0, 3.0], [-3.0, 5.0]])
    assert b.provenance is Provenance.TYPE_B_DIFFERENCES_PLUS_LAST
    assert build_generators(np.random.default_rng(0).standard_normal((7, 3)), "A").m == 6
    with pytest.raises(DegenerateSampleError):
        build_generators(np.ones((2, 2)), "A")


def test_is_full_space_examples():
    for d in (1, 2, 3):
        I = np.eye(d)
        assert is_full_space(ConeGenerators(np.hstack([I, -I])))
        assert not is_full_space(ConeGenerators(I))
        assert not is_full_space(ConeGenerators(I[:, :1]))


def test_rejection_sampler():
    for seed in range(20):
        _, attempts = sample_dual_weyl_cone(SamplerConfig(d=2, n=3, seed=seed), "A")
        assert attempts == 1
    gens, _ = sample_dual_weyl_cone(SamplerConfig(d=2, n=6, seed=4), "A")
    assert not is_full_space(gens)
    # 10 points in the line: type-A differences of both signs are near certain
    with pytest.raises(RuntimeError):
        sample_dual_weyl_cone(SamplerConfig(d=1, n=30, seed=0), "A", max_attempts=1)


def test_acceptance_fraction_n4_d2():
    rng = make_rng(2)
    ok = sum(not is_full_space(build_generators(rng.standard_normal((4, 2)), "A"))
             for _ in range(10**4))
    assert abs(ok / 10**4 - 0.5) < 4 * np.sqrt(0.25 / 10**4)


def test_count_faces_examples():
    assert count_faces(ConeGenerators(np.eye(2)), 1) == 2
    assert count_faces(ConeGenerators.explicit([[1, 0], [1, 1], [1, -1]]), 1) == 2
    with pytest.raises(ValueError):
        count_faces(ConeGenerators(np.eye(2)), 2)
    with pytest.raises(ValueError):
        count_faces(ConeGenerators(np.ones((2, 15)) + np.arange(15)), 1)
    with pytest.raises(NonPointedConeError):
        count_faces(ConeGenerators.explicit([[1, 0], [-1, 0], [0, 1]]), 1)
    assert not is_pointed(ConeGenerators.explicit([[1, 0], [-1, 0]]))


def test_metric_projection_examples():
    orth = ConeGenerators(np.eye(2))
    for pt, proj, dim in (((1, -1), (1, 0), 1), ((1, 2), (1, 2), 2), ((-1, -2), (0, 0), 0)):
        r = metric_projection(orth, pt)
        assert np.allclose(r.projection, proj) and r.face_dimension == dim


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_projection_kkt(seed):
    rng = np.random.default_rng(seed)
    d, m = int(rng.integers(1, 5)), int(rng.integers(1, 7))
    gens = ConeGenerators(rng.standard_normal((d, m)))
    x = rng.standard_normal(d) * 3
    r = metric_projection(gens, x)
    resid = x - r.projection
    assert np.allclose(gens.columns @ r.coefficients, r.projection, atol=1e-8)
    assert np.all(r.coefficients >= 0)
    assert abs(resid @ r.projection) <= 1e-8
    assert np.all(resid @ gens.columns <= 1e-8)
    assert 0 <= r.face_dimension <= d


# vectorized kernels against the LP / NNLS reference routines

@given(seeds, st.integers(1, 4), st.integers(1, 7))
@settings(max_examples=150, deadline=None)
def test_positively_spans_matches_lp(seed, d, m):
    V = np.random.default_rng(seed).standard_normal((d, m))
    assert positively_spans(V.T[None])[0] == is_full_space(ConeGenerators(V))


@pytest.mark.parametrize("n,d,variant", [(4, 2, "A"), (5, 3, "A"), (6, 3, "A"), (4, 3, "B"), (6, 4, "A")])
def test_face_counts_match_lp(n, d, variant):
    rng = make_rng(9)
    stack = []
    for _ in range(25):
        gens, _ = sample_dual_weyl_cone(SamplerConfig(d=d, n=n), variant, rng=rng)
        stack.append(gens.columns)
    V = np.array(stack)
    for k in range(1, d):
        assert list(face_counts(V, k)) == [count_faces(ConeGenerators(v), k) for v in V]


@pytest.mark.parametrize("n,d,variant", [(3, 2, "A"), (5, 3, "A"), (4, 3, "B"), (6, 4, "A")])
def test_projection_dims_match_nnls(n, d, variant):
    rng = make_rng(10)
    V = np.array([sample_dual_weyl_cone(SamplerConfig(d=d, n=n), variant, rng=rng)[0].columns
                  for _ in range(200)])
    g = rng.standard_normal((200, d))
    dims, proj = projection_face_dims(V, g)
    for v, x, k, p in zip(V, g, dims, proj):
        ref = metric_projection(ConeGenerators(v), x)
        if k >= 0:
            assert k == ref.face_dimension
            assert np.allclose(p, ref.projection, atol=1e-8)


@pytest.mark.parametrize("n,d,variant", [(3, 2, "A"), (5, 3, "A"), (4, 3, "B")])
def test_meets_subspace_matches_lp(n, d, variant):
    rng = make_rng(12)
    V = np.array([sample_dual_weyl_cone(SamplerConfig(d=d, n=n), variant, rng=rng)[0].columns
                  for _ in range(40)])
    Q = haar_orthogonal(rng, 40, d)
    for k in range(0, d + 1):
        for weyl in (False, True):
            fast = meets_subspace(V, Q, k, weyl)
            for i in range(40):
                slow = subspace_meets_cone(ConeGenerators(V[i]), Q[i, :, : d - k], polar=weyl)
                assert fast[i] == slow


def test_haar_orthogonal():
    Q = haar_orthogonal(make_rng(0), 500, 3)
    assert np.allclose(np.einsum("nij,nik->njk", Q, Q), np.eye(3), atol=1e-12)
    # first column is uniform on the sphere: mean near zero
    assert np.abs(Q[:, :, 0].mean(axis=0)).max() < 0.15


def test_dual_generators_are_polar():
    for seed in range(10):
        gens, _ = sample_dual_weyl_cone(SamplerConfig(d=3, n=5, seed=seed), "A")
        dual = dual_generators(gens)
        assert np.all(dual.columns.T @ gens.columns <= 1e-9)
        # the polar of the polar is the cone itself
        back = dual_generators(dual)
        for v in gens.columns.T:
            r = metric_projection(back, v)
            assert np.allclose(r.projection, v, atol=1e-8)


def test_dual_histograms_reverse():
    # projections onto C and onto its polar split g, so face dims add to d
    rng = make_rng(5)
    for _ in range(10):
        gens, _ = sample_dual_weyl_cone(SamplerConfig(d=3, n=5), "A", rng=rng)
        dual = dual_generators(gens)
        for g in rng.standard_normal((20, 3)):
            a = metric_projection(gens, g).face_dimension
            b = metric_projection(dual, g).face_dimension
            assert a + b == 3
