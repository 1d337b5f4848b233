"""Sampling the closed loop of motor states that share one sensor pose."""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DisjointManifold, NonClosure, SingularConfiguration
from .kinematics import SEGMENT_LENGTH, _wrap, forward_pose, motor_distance, motor_distance_many, wrap_angle

STEP = 1e-3
MIN_SAMPLES = 50
CLOSURE_TOL = 1e-2
N_MEMBERS = 100
POSE_TOL = 2e-2
MAX_STEPS = 10_000_000


@dataclass
class PointOfView:
    seed: np.ndarray
    members: np.ndarray  # (N, 4), ordered along the loop, members[0] == seed
    pose_tag: np.ndarray
    loop_length: float = float("nan")

    def to_dict(self):
        return {
            "seed": self.seed.tolist(),
            "pose_tag": self.pose_tag.tolist(),
            "loop_length": self.loop_length,
            "members": self.members.tolist(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(np.asarray(d["seed"], dtype=float), np.asarray(d["members"], dtype=float),
                   np.asarray(d["pose_tag"], dtype=float), float(d.get("loop_length", "nan")))


def _walk(m0, step, min_samples, closure_tol, max_steps, correct):
    """Raw kernel walk; returns the list of visited motor states (m0 first)."""
    t1, t2, t3, t4 = (float(v) for v in m0)
    tx, ty, ta = forward_pose(m0)
    samples = [(t1, t2, t3, t4)]
    prev = None
    m0_arr = np.asarray(m0, dtype=float)
    for j in range(1, max_steps + 1):
        # kernel direction: cross product of the two position rows of J
        a1 = t1
        a2 = a1 + t2
        a3 = a2 + t3
        s1, s2, s3 = math.sin(a1), math.sin(a2), math.sin(a3)
        c1, c2, c3 = math.cos(a1), math.cos(a2), math.cos(a3)
        x0, x1, x2 = -(s1 + s2 + s3), -(s2 + s3), -s3
        y0, y1, y2 = c1 + c2 + c3, c2 + c3, c3
        ka = x1 * y2 - x2 * y1
        kb = x2 * y0 - x0 * y2
        kc = x0 * y1 - x1 * y0
        kd = -(ka + kb + kc)
        n = math.sqrt(ka * ka + kb * kb + kc * kc + kd * kd)
        if n < 1e-8:
            raise SingularConfiguration(f"singular configuration during walk at step {j}")
        if prev is not None and ka * prev[0] + kb * prev[1] + kc * prev[2] + kd * prev[3] < 0:
            n = -n
        ka, kb, kc, kd = ka / n, kb / n, kc / n, kd / n
        prev = (ka, kb, kc, kd)
        t1 += step * ka
        t2 += step * kb
        t3 += step * kc
        t4 += step * kd
        if correct:
            # one Gauss-Newton step back onto the pose: position through joints
            # 1-3 (min-norm, 2x3 block), orientation absorbed by joint 4
            a1 = t1
            a2 = a1 + t2
            a3 = a2 + t3
            s1, s2, s3 = math.sin(a1), math.sin(a2), math.sin(a3)
            c1, c2, c3 = math.cos(a1), math.cos(a2), math.cos(a3)
            rx = tx - (c1 + c2 + c3)
            ry = ty - (s1 + s2 + s3)
            x0, x1, x2 = -(s1 + s2 + s3), -(s2 + s3), -s3
            y0, y1, y2 = c1 + c2 + c3, c2 + c3, c3
            gxx = x0 * x0 + x1 * x1 + x2 * x2
            gxy = x0 * y0 + x1 * y1 + x2 * y2
            gyy = y0 * y0 + y1 * y1 + y2 * y2
            det = gxx * gyy - gxy * gxy
            u = (gyy * rx - gxy * ry) / det
            v = (gxx * ry - gxy * rx) / det
            d1 = x0 * u + y0 * v
            d2 = x1 * u + y1 * v
            d3 = x2 * u + y2 * v
            t1 += d1
            t2 += d2
            t3 += d3
            t4 += _wrap(ta - (t1 + t2 + t3 + t4))
        samples.append((t1, t2, t3, t4))
        if j + 1 >= min_samples:
            # cheap per-joint prefilter before the exact torus distance
            e1 = abs(_wrap(t1 - m0[0]))
            if e1 < closure_tol and motor_distance(samples[-1], m0_arr) < closure_tol:
                return np.asarray(samples)
    raise NonClosure(f"kernel walk did not close within {max_steps} steps")


def _resample(raw, n_members):
    """Equal arc-length stations along the closed polyline through ``raw``."""
    m0 = raw[0]
    # close the loop with the torus-shortest segment back to the seed
    closing = raw[-1] + wrap_angle(m0 - raw[-1])
    pts = np.vstack([raw, closing])
    seg = motor_distance_many(pts[1:], pts[:-1])
    s = np.concatenate([[0.0], np.cumsum(seg)])
    length = s[-1]
    stations = np.arange(n_members) * (length / n_members)
    members = np.column_stack([np.interp(stations, s, pts[:, k]) for k in range(pts.shape[1])])
    return members, length


def sample_pov(m0, step=STEP, min_samples=MIN_SAMPLES, closure_tol=CLOSURE_TOL, n_members=N_MEMBERS,
               max_steps=MAX_STEPS, correct=True, return_raw=False):
    """Walk the Jacobian kernel from ``m0`` around its self-motion loop.

    Raises :class:`DisjointManifold` when the tip is closer than one segment
    length to the base, where the loop splits into two components.
    """
    m0 = np.asarray(m0, dtype=float)
    pose = forward_pose(m0)
    if math.hypot(pose[0], pose[1]) < SEGMENT_LENGTH:
        raise DisjointManifold(f"tip-base distance {math.hypot(pose[0], pose[1]):.4f} < {SEGMENT_LENGTH}")
    raw = _walk(m0, step, min_samples, closure_tol, max_steps, correct)
    members, length = _resample(raw, n_members)
    pov = PointOfView(m0.copy(), members, pose, float(length))
    if return_raw:
        return pov, raw
    return pov


def pov_pose_spread(p):
    """Largest pose deviation (x, y, wrapped alpha) of any member from the tag."""
    from .kinematics import forward_pose_batch

    poses = forward_pose_batch(p.members)
    diff = poses - p.pose_tag
    diff[:, 2] = wrap_angle(diff[:, 2])
    return float(np.max(np.linalg.norm(diff, axis=1)))
