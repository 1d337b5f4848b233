"""Compensating environmental changes with the arm and building the spatial atlas."""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .environment import ObjectState, Spatial, StateChange, apply_change
from .errors import BudgetExceeded, SpaceDiscoveryError
from .kinematics import SEGMENT_LENGTH, _wrap, forward_pose
from .optics import relative_deviation, sense
from .pov import PointOfView, sample_pov
from .simplex import SimplexOptions, minimize_simplex

log = logging.getLogger(__name__)

XI = 1e-3
SENSORY_TOL = 1e-3


@dataclass
class Outcome:
    success: bool
    m_after: np.ndarray = None
    kinematic_residual: float = float("nan")
    sensory_residual: float = float("nan")
    reason: str = None


@dataclass
class Episode:
    step: int
    kind: str
    m_before: np.ndarray
    target_pose: np.ndarray
    outcome: Outcome
    grid_index: tuple = None
    pov_index: int = None
    note: str = None

    def to_dict(self):
        o = self.outcome
        return {
            "step": self.step,
            "kind": self.kind,
            "grid_index": None if self.grid_index is None else list(self.grid_index),
            "m_before": self.m_before.tolist(),
            "target_pose": self.target_pose.tolist(),
            "success": o.success,
            "reason": o.reason,
            "m_after": None if o.m_after is None else o.m_after.tolist(),
            "kinematic_residual": _finite_or_none(o.kinematic_residual),
            "sensory_residual": _finite_or_none(o.sensory_residual),
            "pov_index": self.pov_index,
            "note": self.note,
        }


def _finite_or_none(v):
    return float(v) if v is not None and math.isfinite(v) else None


@dataclass
class SpatialAtlas:
    povs: list
    grid_index: np.ndarray  # (n, 2) grid coordinates (col, row); may be fractional for the origin
    origin_pov_index: int = 0
    spacing: float = float("nan")

    def __len__(self):
        return len(self.povs)

    @property
    def pose_tags(self):
        return np.array([p.pose_tag for p in self.povs]).reshape(-1, 3)

    def to_dict(self):
        return {
            "origin_pov_index": self.origin_pov_index,
            "spacing": self.spacing,
            "grid_index": self.grid_index.tolist(),
            "povs": [p.to_dict() for p in self.povs],
        }

    @classmethod
    def from_dict(cls, d):
        return cls([PointOfView.from_dict(p) for p in d["povs"]],
                   np.asarray(d["grid_index"], dtype=float).reshape(-1, 2),
                   int(d["origin_pov_index"]), float(d["spacing"]))


def pose_objective(target):
    """Squared pose error with the orientation residual wrapped to one turn."""
    tx, ty, ta = (float(v) for v in target)

    def f(m):
        a1 = m[0]
        a2 = a1 + m[1]
        a3 = a2 + m[2]
        ex = math.cos(a1) + math.cos(a2) + math.cos(a3) - tx
        ey = math.sin(a1) + math.sin(a2) + math.sin(a3) - ty
        ea = _wrap(a3 + m[3] - ta)
        return ex * ex + ey * ey + ea * ea

    return f


def compensate(m_prev, target_pose, sensory_target, world_after, retina, opts=SimplexOptions(), xi=XI,
               sensory_tol=SENSORY_TOL, rng=None):
    """Search a motor state putting the sensor at ``target_pose``.

    Success needs both the kinematic residual below ``xi`` and the sensation
    in ``world_after`` matching ``sensory_target`` within ``sensory_tol``
    (relative to its peak).
    """
    if opts.good_enough is None:
        opts = SimplexOptions(**{**opts.__dict__, "good_enough": xi})
    m_prev = np.asarray(m_prev, dtype=float)
    try:
        m, f = minimize_simplex(pose_objective(target_pose), m_prev, opts, rng)
    except BudgetExceeded as e:
        m, f = e.x, e.f
    if not f < xi:
        return Outcome(False, None, f, float("nan"), "NonCompensable")
    s = sense(retina, forward_pose(m), world_after.sources)
    dev = relative_deviation(s, sensory_target)
    if not dev < sensory_tol:
        return Outcome(False, None, f, dev, "SensoryMismatch")
    return Outcome(True, m, f, dev)


def explore(retina, obj0, schedule, m0, opts=SimplexOptions(), xi=XI, sensory_tol=SENSORY_TOL, rng=None,
            origin_grid_index=None, spacing=float("nan"), pov_kwargs=None, workers=1):
    """Run the tracking loop over ``schedule`` and sample a POV for every success.

    The sensor pose targeted by each compensation is the previous target
    shifted by the object displacement (zero for state changes), starting at
    the initial pose. The sensory target is what the sensor sees from that
    tracked pose before the change, so only genuine displacements within
    reach can be cancelled.

    Returns ``(atlas, episodes)``.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    pov_kwargs = pov_kwargs or {}
    m0 = np.asarray(m0, dtype=float)
    tracked = forward_pose(m0)
    m_cur = m0.copy()
    obj = obj0
    episodes = []
    accepted = []  # (episode index, m_after, grid index)
    seen = {tuple(origin_grid_index)} if origin_grid_index is not None else set()
    for step, change in enumerate(schedule):
        s_before = sense(retina, tracked, obj.sources)
        obj_after = apply_change(obj, change)
        if isinstance(change, Spatial):
            target = tracked + np.array([change.delta[0], change.delta[1], 0.0])
            kind, gidx = "spatial", change.grid_index
        else:
            target = tracked.copy()
            kind, gidx = "state", None
        out = compensate(m_cur, target, s_before, obj_after, retina, opts, xi, sensory_tol, rng)
        ep = Episode(step, kind, m_cur.copy(), target, out, gidx)
        if out.success:
            m_cur = out.m_after
            if math.hypot(target[0], target[1]) < SEGMENT_LENGTH:
                ep.note = "DisjointManifold"
            elif gidx is not None and tuple(gidx) in seen:
                ep.note = "duplicate"
            else:
                accepted.append((len(episodes), out.m_after, gidx))
                if gidx is not None:
                    seen.add(tuple(gidx))
        episodes.append(ep)
        tracked = target
        obj = obj_after

    seeds = [m0] + [a[1] for a in accepted]
    povs = _sample_many(seeds, pov_kwargs, workers)
    if isinstance(povs[0], Exception):
        raise povs[0]
    atlas_povs = [povs[0]]
    grid = [origin_grid_index if origin_grid_index is not None else (float("nan"), float("nan"))]
    for (ei, _, gidx), p in zip(accepted, povs[1:]):
        if isinstance(p, Exception):
            episodes[ei].note = type(p).__name__
            continue
        episodes[ei].pov_index = len(atlas_povs)
        atlas_povs.append(p)
        grid.append(gidx)
    atlas = SpatialAtlas(atlas_povs, np.asarray(grid, dtype=float).reshape(-1, 2), 0, spacing)
    return atlas, episodes


def _sample_one(args):
    m, kw = args
    try:
        return sample_pov(m, **kw)
    except SpaceDiscoveryError as e:
        return e


def _sample_many(seeds, kw, workers):
    jobs = [(m, kw) for m in seeds]
    if workers is None or workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_sample_one, jobs, chunksize=8))
    return [_sample_one(j) for j in jobs]
