"""Planar 3-segment arm with a rotary sensor at its tip.

Joint ``i`` rotates relative to the previous segment, so segment ``i`` points
along the cumulative angle ``m[0] + ... + m[i-1]``. The fourth joint only turns
the sensor; the sensor orientation is the sum of all four angles.
"""
import math

import numpy as np

from .errors import SingularConfiguration

N_JOINTS = 4
SEGMENT_LENGTH = 1.0
N_SEGMENTS = 3
REACH = N_SEGMENTS * SEGMENT_LENGTH
SINGULAR_TOL = 1e-8


def wrap_angle(a):
    """Map angles to [-pi, pi)."""
    return np.mod(np.asarray(a, dtype=float) + np.pi, 2 * np.pi) - np.pi


def _wrap(a):
    # scalar fast path used in the inner loops
    a = math.fmod(a + math.pi, 2 * math.pi)
    if a < 0:
        a += 2 * math.pi
    return a - math.pi


def forward_pose(m):
    """Return the sensor pose ``[x, y, alpha]`` for motor state ``m``."""
    t1, t2, t3, t4 = (float(v) for v in m)
    a1 = t1
    a2 = a1 + t2
    a3 = a2 + t3
    x = math.cos(a1) + math.cos(a2) + math.cos(a3)
    y = math.sin(a1) + math.sin(a2) + math.sin(a3)
    return np.array([x, y, a3 + t4])


def forward_pose_batch(ms):
    ms = np.atleast_2d(np.asarray(ms, dtype=float))
    cum = np.cumsum(ms, axis=1)
    x = np.cos(cum[:, :3]).sum(axis=1)
    y = np.sin(cum[:, :3]).sum(axis=1)
    return np.column_stack([x, y, cum[:, 3]])


def jacobian(m):
    """Analytic 3x4 Jacobian of :func:`forward_pose` (rows x, y, alpha)."""
    cum = np.cumsum(np.asarray(m, dtype=float))
    s = np.sin(cum[:3])
    c = np.cos(cum[:3])
    # d/d theta_k of sum_{i>=k} (cos, sin)(cum_i)
    sx = np.cumsum(s[::-1])[::-1]
    cx = np.cumsum(c[::-1])[::-1]
    J = np.zeros((3, N_JOINTS))
    J[0, :3] = -sx
    J[1, :3] = cx
    J[2, :] = 1.0
    return J


def kernel_direction(m, previous=None):
    """Unit vector spanning the null space of the Jacobian at ``m``.

    If ``previous`` is given the sign is flipped so that the result points the
    same way along the self-motion loop.
    """
    J = jacobian(m)
    _, sv, vt = np.linalg.svd(J)
    if sv[-1] < SINGULAR_TOL:
        raise SingularConfiguration(f"Jacobian rank < 3 at {np.asarray(m).tolist()} (sigma_min={sv[-1]:.3g})")
    k = vt[-1]
    if previous is not None and np.dot(k, previous) < 0:
        k = -k
    return k


def kernel_step(m1, m2, m3, prev):
    """Scalar kernel direction from the generalized cross product of J.

    With column 4 equal to (0, 0, 1) and the alpha row all ones, the null
    vector is ``(a, b, c, -(a+b+c))`` where ``(a, b, c)`` is the cross product
    of the two position rows. Returns ``(k1, k2, k3, k4, norm)``.
    """
    a1 = m1
    a2 = a1 + m2
    a3 = a2 + m3
    s1, s2, s3 = math.sin(a1), math.sin(a2), math.sin(a3)
    c1, c2, c3 = math.cos(a1), math.cos(a2), math.cos(a3)
    xr = (-(s1 + s2 + s3), -(s2 + s3), -s3)
    yr = (c1 + c2 + c3, c2 + c3, c3)
    a = xr[1] * yr[2] - xr[2] * yr[1]
    b = xr[2] * yr[0] - xr[0] * yr[2]
    c = xr[0] * yr[1] - xr[1] * yr[0]
    d = -(a + b + c)
    n = math.sqrt(a * a + b * b + c * c + d * d)
    if prev is not None and a * prev[0] + b * prev[1] + c * prev[2] + d * prev[3] < 0:
        n = -n
    return a / n, b / n, c / n, d / n, abs(n)


def motor_distance(a, b):
    """Flat-torus distance between motor states (each joint is 2*pi periodic).

    ``|wrap(a - b)|`` equals ``arccos(cos(a - b))`` per joint but keeps full
    precision for tiny differences.
    """
    return float(motor_distance_many(np.asarray(a, dtype=float), np.asarray(b, dtype=float)))


def motor_distance_many(a, b):
    """Broadcasting version of :func:`motor_distance`, reduced over the last axis."""
    # abs first: fl(a - b) == -fl(b - a), which keeps the result exactly symmetric
    d = np.mod(np.abs(np.asarray(a) - np.asarray(b)), 2 * np.pi)
    d = np.minimum(d, 2 * np.pi - d)
    return np.sqrt(np.sum(d * d, axis=-1))


def tip_radius(m):
    p = forward_pose(m)
    return math.hypot(p[0], p[1])
