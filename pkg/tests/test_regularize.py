import numpy as np
import pytest

from spacediscovery.cca import CcaParams
from spacediscovery.errors import DimensionMismatch
from spacediscovery.metric import embedding_distances
from spacediscovery.regularize import affine_alignment_residual, equality_sets, equalize, regularize_metric


def _grid(n):
    c, r = np.meshgrid(np.arange(n), np.arange(n))
    return np.column_stack([c.ravel(), r.ravel()]).astype(float)


class TestEqualitySets:
    def test_two_by_two(self):
        s = equality_sets(_grid(2))
        counts = dict(zip(s.keys, s.counts.tolist()))
        assert counts == {(0, 1): 2, (1, 0): 2, (1, 1): 1, (1, -1): 1}
        assert (0, 0) not in counts

    def test_total_pairs(self):
        g = _grid(5)
        s = equality_sets(g)
        assert s.counts.sum() == 25 * 24 // 2
        assert len(s.pairs) == len(s.labels)

    def test_offsets_match_keys(self):
        g = _grid(4)
        s = equality_sets(g)
        for (i, j), lab in zip(s.pairs, s.labels):
            assert tuple((g[j] - g[i]).astype(int).tolist()) == s.keys[lab]

    def test_half_integer_origin(self):
        g = np.vstack([[1.5, 1.5], _grid(3)])
        s = equality_sets(g)
        assert (0.5, 0.5) in s.keys
        half = [k for k in s.keys if not all(isinstance(v, int) for v in k)]
        assert half

    def test_equalize(self):
        g = _grid(3)
        s = equality_sets(g)
        rng = np.random.default_rng(0)
        D = embedding_distances(g) * rng.uniform(0.8, 1.2, (9, 9))
        D = (D + D.T) / 2
        W = equalize(D, s)
        np.testing.assert_array_equal(W, W.T)
        assert np.max(s.group_cv(W)) < 1e-12


class TestRegularize:
    def test_fixed_point(self):
        g = _grid(6)
        D = embedding_distances(g)
        W, E, diag = regularize_metric(D, equality_sets(g), 2, CcaParams(), iters=3)
        np.testing.assert_allclose(W, D, rtol=0.02, atol=0.02)
        assert len(diag) == 4

    def test_cv_decreases(self):
        g = _grid(6)
        rng = np.random.default_rng(2)
        D = embedding_distances(g) * rng.uniform(0.7, 1.3, (36, 36))
        D = (D + D.T) / 2
        np.fill_diagonal(D, 0)
        _, E, diag = regularize_metric(D, equality_sets(g), 2, CcaParams(), iters=4)
        cv = [d["mean_cv"] for d in diag]
        assert cv[1] < cv[0]
        assert cv[-1] < 0.02
        assert affine_alignment_residual(E, g) < 0.05


class TestAffineResidual:
    def test_exact_affine(self, rng):
        P = rng.uniform(size=(20, 2))
        E = P @ np.array([[2.0, 0.3], [-0.5, 1.0]]) + [3, -1]
        assert affine_alignment_residual(E, P) < 1e-12

    def test_three_dimensional(self, rng):
        P = rng.uniform(size=(20, 2))
        E = np.column_stack([P, rng.uniform(size=20)])
        assert affine_alignment_residual(E, P) < 1e-12

    def test_collapsed(self, rng):
        P = rng.uniform(size=(50, 2))
        assert affine_alignment_residual(np.zeros((50, 2)), P) > 0.1

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            affine_alignment_residual(np.zeros((3, 2)), np.zeros((4, 2)))
