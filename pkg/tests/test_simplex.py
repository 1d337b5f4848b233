import numpy as np
import pytest

from spacediscovery.errors import BudgetExceeded
from spacediscovery.simplex import SimplexOptions, minimize_simplex


class TestSimplex:
    def test_quadratic(self, rng):
        c = np.array([1.0, -2.0, 0.5, 3.0])
        x, f = minimize_simplex(lambda x: float(np.sum((x - c) ** 2)), np.zeros(4), rng=rng)
        np.testing.assert_allclose(x, c, atol=1e-4)
        assert f < 1e-8

    def test_rosenbrock(self, rng):
        def rosen(x):
            return float(100 * (x[1] - x[0] ** 2) ** 2 + (1 - x[0]) ** 2)

        x, f = minimize_simplex(rosen, np.array([-1.2, 1.0]), SimplexOptions(initial_scale=0.5), rng)
        assert f < 1e-6
        np.testing.assert_allclose(x, [1, 1], atol=1e-2)

    def test_unbounded(self, rng):
        with pytest.raises(BudgetExceeded) as info:
            minimize_simplex(lambda x: -float(np.linalg.norm(x)), np.zeros(2), SimplexOptions(max_iter=50), rng)
        assert info.value.x.shape == (2,)

    def test_good_enough_stops(self, rng):
        calls = []

        def f(x):
            calls.append(1)
            return float(np.sum(x ** 2))

        minimize_simplex(f, np.ones(3), SimplexOptions(good_enough=1.0), rng)
        n_short = len(calls)
        calls.clear()
        minimize_simplex(f, np.ones(3), SimplexOptions(), np.random.default_rng(1234))
        assert n_short < len(calls)

    def test_deterministic(self):
        f = lambda x: float(np.sum(np.cos(3 * x) + x ** 2))  # noqa: E731
        a = minimize_simplex(f, np.ones(3), rng=np.random.default_rng(3))
        b = minimize_simplex(f, np.ones(3), rng=np.random.default_rng(3))
        np.testing.assert_array_equal(a[0], b[0])
