"""Hausdorff distance between points of view under the torus motor metric."""
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy.spatial import cKDTree

from .kinematics import motor_distance_many

TWO_PI = 2 * np.pi


def _members(p):
    return np.asarray(getattr(p, "members", p), dtype=float).reshape(-1, 4)


def hausdorff_distance(A, B):
    """Two-sided sup-inf of the motor distance between member sets."""
    a = _members(A)
    b = _members(B)
    d = motor_distance_many(a[:, None, :], b[None, :, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def _to_box(x):
    w = np.mod(x, TWO_PI)
    w[w >= TWO_PI] = 0.0
    return w


def _directed_columns(args):
    wrapped, cols = args
    n, k, _ = wrapped.shape
    flat = wrapped.reshape(-1, 4)
    out = np.empty((n, len(cols)))
    for c, j in enumerate(cols):
        tree = cKDTree(wrapped[j], boxsize=TWO_PI)
        d, _ = tree.query(flat)
        out[:, c] = d.reshape(n, k).max(axis=1)
    return out


def directed_hausdorff_matrix(member_sets, workers=1):
    """``H[i, j] = sup_{a in i} inf_{b in j} d(a, b)``.

    Uses periodic KD-trees (box size 2*pi), whose Euclidean metric on the
    wrapped coordinates is exactly the torus motor metric.
    """
    M = np.asarray(member_sets, dtype=float)
    n = len(M)
    wrapped = _to_box(M)
    if workers is None or workers > 1:
        nchunks = 4 * (workers or 8)
        chunks = [c for c in np.array_split(np.arange(n), nchunks) if len(c)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_directed_columns, [(wrapped, c) for c in chunks]))
        return np.concatenate(parts, axis=1)
    return _directed_columns((wrapped, np.arange(n)))


def pairwise_distances(atlas, workers=1):
    """Symmetric Hausdorff distance matrix over all atlas POVs."""
    povs = getattr(atlas, "povs", atlas)
    if len(povs) == 0:
        return np.zeros((0, 0))
    H = directed_hausdorff_matrix([_members(p) for p in povs], workers)
    D = np.maximum(H, H.T)
    np.fill_diagonal(D, 0.0)
    return D


def embedding_distances(E):
    """Euclidean distance matrix of embedding coordinates."""
    E = np.asarray(E, dtype=float)
    if E.ndim == 1:
        E = E[:, None]
    diff = E[:, None, :] - E[None, :, :]
    D = np.sqrt(np.sum(diff * diff, axis=-1))
    np.fill_diagonal(D, 0.0)
    return D
