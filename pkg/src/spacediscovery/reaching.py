"""Shortest-path reaching on a pruned graph of points of view."""
import heapq
import logging
from dataclasses import dataclass

import numpy as np

from .errors import Unreachable
from .kinematics import forward_pose_batch, motor_distance, motor_distance_many

log = logging.getLogger(__name__)

PRUNE_THRESHOLD = 0.72
DEGREE_CAP = 50


@dataclass
class PovGraph:
    n: int
    neighbors: list  # per node: (indices, weights), indices ascending
    prune_threshold: float
    max_degree: int

    @property
    def n_edges(self):
        return sum(len(nb[0]) for nb in self.neighbors) // 2


@dataclass
class Trajectory:
    node_path: list
    motor_path: np.ndarray
    pose_path: np.ndarray
    internal_length: float
    external_length: float

    def rows(self):
        for k, (node, m, p) in enumerate(zip(self.node_path, self.motor_path, self.pose_path)):
            yield [k, node, *m.tolist(), *p.tolist()]


def build_graph(D, threshold=PRUNE_THRESHOLD):
    """Keep only edges no longer than ``threshold``."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    D = np.asarray(D, dtype=float)
    n = len(D)
    keep = (D <= threshold) & (D > 0)
    np.fill_diagonal(keep, False)
    neighbors = []
    for i in range(n):
        idx = np.flatnonzero(keep[i])
        neighbors.append((idx, D[i, idx]))
    max_degree = max((len(nb[0]) for nb in neighbors), default=0)
    if max_degree > DEGREE_CAP:
        log.warning("pruned graph has max degree %d > %d", max_degree, DEGREE_CAP)
    return PovGraph(n, neighbors, float(threshold), int(max_degree))


def shortest_path(g, s, t):
    """Dijkstra; ties are settled in favour of the smaller node index."""
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise IndexError("node out of range")
    dist = np.full(g.n, np.inf)
    prev = np.full(g.n, -1)
    done = np.zeros(g.n, dtype=bool)
    dist[s] = 0.0
    heap = [(0.0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == t:
            break
        idx, w = g.neighbors[u]
        for v, wv in zip(idx.tolist(), w.tolist()):
            nd = d + wv
            if nd < dist[v]:
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    if not done[t]:
        raise Unreachable(f"no path from {s} to {t}")
    path = [t]
    while path[-1] != s:
        path.append(int(prev[path[-1]]))
    return path[::-1], float(dist[t])


def motor_path(atlas, node_path, m_start, D=None):
    """Pick, in each POV along the path, the member closest to the previous motor state."""
    povs = atlas.povs
    m = np.asarray(m_start, dtype=float)
    ms = [m]
    for node in node_path[1:]:
        members = povs[node].members
        d = motor_distance_many(members, m)
        m = members[int(np.argmin(d))]
        ms.append(m)
    ms = np.asarray(ms)
    poses = forward_pose_batch(ms)
    ext = float(np.sum(np.hypot(*np.diff(poses[:, :2], axis=0).T))) if len(ms) > 1 else 0.0
    internal = 0.0
    if D is not None and len(node_path) > 1:
        internal = float(sum(D[a, b] for a, b in zip(node_path[:-1], node_path[1:])))
    return Trajectory(list(node_path), ms, poses, internal, ext)


def segment_clearance(P, Q, center=(0.0, 0.0)):
    """Distance from ``center`` to each segment ``P[k]-Q[k]``."""
    c = np.asarray(center, dtype=float)
    d = Q - P
    dd = np.sum(d * d, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        u = np.clip(np.sum((c - P) * d, axis=-1) / dd, 0.0, 1.0)
    u = np.where(dd > 0, u, 0.0)
    closest = P + u[..., None] * d
    return np.linalg.norm(closest - c, axis=-1)


def grid_geodesic_lengths(positions, sources, hole_radius=1.0, margin=0.0):
    """Shortest polyline lengths through ``positions`` avoiding the central hole.

    Two nodes are linked by a straight segment when it keeps at least
    ``hole_radius - margin`` away from the base.
    """
    from scipy.sparse.csgraph import dijkstra

    P = np.asarray(positions, dtype=float)
    i, j = np.triu_indices(len(P), 1)
    ok = segment_clearance(P[i], P[j]) >= hole_radius - margin
    W = np.zeros((len(P), len(P)))
    W[i[ok], j[ok]] = np.hypot(*(P[i[ok]] - P[j[ok]]).T)
    W = W + W.T
    return dijkstra(W, directed=False, indices=np.asarray(sources))


def draw_pairs(rng, n, count):
    pairs = []
    while len(pairs) < count:
        s, t = (int(v) for v in rng.choice(n, size=2, replace=False))
        pairs.append((s, t))
    return pairs


def straightness(atlas, D, pairs, rng, threshold=PRUNE_THRESHOLD, margin=None):
    """External path length over hole-avoiding geodesic length for each pair.

    Returns ``(ratios, trajectories)``; unreachable pairs give ``nan``.
    """
    g = build_graph(D, threshold)
    pos = atlas.pose_tags[:, :2]
    if margin is None:
        margin = atlas.spacing if np.isfinite(atlas.spacing) else 0.0
    geo = grid_geodesic_lengths(pos, [s for s, _ in pairs], margin=margin)
    ratios, trajs = [], []
    for k, (s, t) in enumerate(pairs):
        try:
            path, _ = shortest_path(g, s, t)
        except Unreachable:
            ratios.append(float("nan"))
            trajs.append(None)
            continue
        members = atlas.povs[s].members
        m0 = members[int(rng.integers(len(members)))]
        tr = motor_path(atlas, path, m0, D)
        ratios.append(tr.external_length / geo[k, t])
        trajs.append(tr)
    return np.asarray(ratios), trajs
