"""Pinhole sensor with a 1-D retina of Gaussian receptors."""
import math

import numpy as np

from .errors import DegenerateSource

N_RECEPTORS = 6
RETINA_HALF_WIDTH = 0.5


def make_retina(rng, n_receptors=N_RECEPTORS):
    """Receptor positions drawn uniformly on the unit retina [-0.5, 0.5]."""
    return rng.uniform(-RETINA_HALF_WIDTH, RETINA_HALF_WIDTH, size=n_receptors)


def project_source(pose, source):
    """Project a point source through a focal-length-1 pinhole.

    Returns ``(p_l, d_l)`` (retina coordinate and lens-source distance), or
    ``None`` when the source lies behind the lens.
    """
    dx = float(source[0]) - float(pose[0])
    dy = float(source[1]) - float(pose[1])
    d = math.hypot(dx, dy)
    if d < 1e-9:
        raise DegenerateSource(f"source {tuple(source)} at lens center")
    bearing = math.atan2(dy, dx) - float(pose[2])
    c = math.cos(bearing)
    if c <= 0:
        return None
    return math.sin(bearing) / c, d


def sense(retina, pose, sources):
    """Receptor intensities: sum over visible sources of exp(-(p_r - p_l)^2) / d_l."""
    retina = np.asarray(retina, dtype=float)
    sources = np.asarray(sources, dtype=float).reshape(-1, 2)
    if len(sources) == 0:
        return np.zeros(len(retina))
    dx = sources[:, 0] - pose[0]
    dy = sources[:, 1] - pose[1]
    d = np.hypot(dx, dy)
    if np.any(d < 1e-9):
        raise DegenerateSource("source at lens center")
    bearing = np.arctan2(dy, dx) - pose[2]
    c = np.cos(bearing)
    vis = c > 0
    if not vis.any():
        return np.zeros(len(retina))
    p = np.sin(bearing[vis]) / c[vis]
    resp = np.exp(-(retina[:, None] - p[None, :]) ** 2) / d[vis][None, :]
    return resp.sum(axis=1)


def relative_deviation(s, ref):
    """Max absolute difference scaled by the reference's peak intensity."""
    s = np.asarray(s, dtype=float)
    ref = np.asarray(ref, dtype=float)
    scale = max(float(np.max(np.abs(ref))), 1e-300)
    return float(np.max(np.abs(s - ref))) / scale
