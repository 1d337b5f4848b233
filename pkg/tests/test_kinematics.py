import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spacediscovery.errors import SingularConfiguration
from spacediscovery.kinematics import (forward_pose, forward_pose_batch, jacobian, kernel_direction, kernel_step,
                                       motor_distance, motor_distance_many)

angles = st.floats(-10, 10, allow_nan=False)
motor = st.lists(angles, min_size=4, max_size=4).map(np.array)


def fd_jacobian(m, h=1e-6):
    J = np.zeros((3, 4))
    for k in range(4):
        e = np.zeros(4)
        e[k] = h
        J[:, k] = (forward_pose(m + e) - forward_pose(m - e)) / (2 * h)
    return J


class TestForwardPose:
    @pytest.mark.parametrize("m, expected", [
        ([0, 0, 0, 0], [3, 0, 0]),
        ([math.pi / 2, 0, 0, 0], [0, 3, math.pi / 2]),
        ([math.pi / 2, -math.pi / 2, 0, 0], [2, 1, 0]),
    ])
    def test_hand_computed(self, m, expected):
        np.testing.assert_allclose(forward_pose(m), expected, atol=1e-12)

    def test_reach(self, rng):
        ms = rng.uniform(-np.pi, np.pi, (10_000, 4))
        p = forward_pose_batch(ms)
        assert np.all(p[:, 0] ** 2 + p[:, 1] ** 2 <= 9 + 1e-12)

    def test_batch_matches_scalar(self, rng):
        ms = rng.uniform(-4, 4, (50, 4))
        np.testing.assert_allclose(forward_pose_batch(ms), [forward_pose(m) for m in ms], atol=1e-14)


class TestJacobian:
    def test_at_zero(self):
        J = jacobian([0, 0, 0, 0])
        np.testing.assert_allclose(J[1], [3, 2, 1, 0])
        np.testing.assert_allclose(J[2], [1, 1, 1, 1])

    @given(motor)
    def test_structure(self, m):
        J = jacobian(m)
        np.testing.assert_array_equal(J[:, 3], [0, 0, 1])
        np.testing.assert_array_equal(J[2], [1, 1, 1, 1])

    def test_finite_differences(self, rng):
        for m in rng.uniform(-np.pi, np.pi, (1000, 4)):
            assert np.max(np.abs(jacobian(m) - fd_jacobian(m))) < 1e-6


class TestKernel:
    def test_known_direction(self):
        k = kernel_direction([math.pi / 2, -math.pi / 2, math.pi / 2, 0])
        k = k * np.sign(k[0])
        np.testing.assert_allclose(k, [0.5, -0.5, -0.5, 0.5], atol=1e-12)

    def test_stretched_is_singular(self):
        with pytest.raises(SingularConfiguration):
            kernel_direction([0, 0, 0, 0])

    def test_defining_property(self, rng):
        for m in rng.uniform(-np.pi, np.pi, (200, 4)):
            k = kernel_direction(m)
            assert np.linalg.norm(jacobian(m) @ k) < 1e-9
            assert abs(np.linalg.norm(k) - 1) < 1e-12

    def test_sign_follows_previous(self, rng):
        m = rng.uniform(-np.pi, np.pi, 4)
        k = kernel_direction(m)
        assert np.dot(kernel_direction(m, previous=-k), -k) > 0

    def test_second_order_drift(self, rng):
        eps = 1e-3
        for m in rng.uniform(-np.pi, np.pi, (200, 4)):
            k = kernel_direction(m)
            assert np.linalg.norm(forward_pose(m + eps * k) - forward_pose(m)) < 10 * eps ** 2

    def test_cross_product_form_matches_svd(self, rng):
        for m in rng.uniform(-np.pi, np.pi, (200, 4)):
            k = kernel_direction(m)
            fast = np.array(kernel_step(m[0], m[1], m[2], k)[:4])
            np.testing.assert_allclose(fast, k, atol=1e-9)


class TestMotorDistance:
    def test_identity(self, rng):
        m = rng.uniform(-5, 5, 4)
        assert motor_distance(m, m) == 0.0

    def test_periodic(self):
        assert motor_distance([0, 0, 0, 0], [2 * math.pi, 0, 0, 0]) == pytest.approx(0, abs=1e-15)

    def test_maximal(self):
        assert motor_distance([0, 0, 0, 0], [math.pi] * 4) == pytest.approx(2 * math.pi, abs=1e-14)

    def test_matches_arccos_form(self, rng):
        a, b = rng.uniform(-7, 7, (2, 500, 4))
        ref = np.sqrt(np.sum(np.arccos(np.clip(np.cos(a - b), -1, 1)) ** 2, axis=1))
        np.testing.assert_allclose(motor_distance_many(a, b), ref, atol=1e-7)

    @settings(max_examples=200)
    @given(motor, motor)
    def test_symmetric_and_bounded(self, a, b):
        d = motor_distance(a, b)
        assert d == motor_distance(b, a)
        assert 0 <= d <= 2 * math.pi + 1e-12
