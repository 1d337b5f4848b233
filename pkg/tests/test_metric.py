import numpy as np
import pytest

from spacediscovery.metric import (directed_hausdorff_matrix, embedding_distances, hausdorff_distance,
                                   pairwise_distances)


def _sets(rng, n=6, k=15):
    return rng.uniform(-np.pi, np.pi, (n, k, 4))


class TestHausdorff:
    def test_identity(self, rng):
        A = rng.uniform(-3, 3, (20, 4))
        assert hausdorff_distance(A, A) == 0.0
        assert hausdorff_distance(A, A[::-1]) == 0.0

    def test_singletons(self):
        a, b = np.zeros((1, 4)), np.array([[0.3, 0.0, 0.0, 0.4]])
        assert hausdorff_distance(a, b) == pytest.approx(0.5)

    def test_one_sided_containment(self):
        A = np.zeros((1, 4))
        B = np.array([[0.0] * 4, [1.0, 0, 0, 0]])
        assert hausdorff_distance(A, B) == pytest.approx(1.0)
        H = directed_hausdorff_matrix([np.vstack([A, A]), B])
        assert H[0, 1] == pytest.approx(0.0)
        assert H[1, 0] == pytest.approx(1.0)

    def test_wraparound(self):
        a = np.array([[np.pi - 0.05, 0, 0, 0]])
        b = np.array([[-np.pi + 0.05, 0, 0, 0]])
        assert hausdorff_distance(a, b) == pytest.approx(0.1)

    def test_symmetry_and_triangle(self, rng):
        S = _sets(rng)
        D = np.array([[hausdorff_distance(a, b) for b in S] for a in S])
        np.testing.assert_array_equal(D, D.T)
        n = len(S)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    assert D[i, k] <= D[i, j] + D[j, k] + 1e-12


class TestMatrix:
    def test_matches_brute_force(self, rng):
        S = _sets(rng, 10, 20)
        D = pairwise_distances(list(S))
        ref = np.array([[hausdorff_distance(a, b) for b in S] for a in S])
        np.testing.assert_allclose(D, ref, atol=1e-12)

    def test_atlas(self, small_world):
        atlas = small_world["atlas"]
        idx = [0, 3, 7]
        D = pairwise_distances([atlas.povs[i] for i in idx])
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                assert D[a, b] == pytest.approx(hausdorff_distance(atlas.povs[i], atlas.povs[j]), abs=1e-12)

    def test_workers_agree(self, rng):
        S = _sets(rng, 8, 10)
        np.testing.assert_allclose(pairwise_distances(list(S), workers=2), pairwise_distances(list(S)))

    def test_empty(self):
        assert pairwise_distances([]).shape == (0, 0)


def test_embedding_distances():
    E = np.array([[0, 0], [3, 4], [0, 1]], dtype=float)
    D = embedding_distances(E)
    assert D[0, 1] == 5 and D[2, 0] == 1
    np.testing.assert_array_equal(np.diag(D), 0)
