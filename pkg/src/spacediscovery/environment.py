"""Rigid object of point light sources, its changes, and the exploration schedule."""
from dataclasses import dataclass, field

import numpy as np

N_SOURCES = 10
OFFSET_RADIUS = 4.0


@dataclass(frozen=True)
class ObjectState:
    center: np.ndarray
    offsets: np.ndarray

    @property
    def sources(self):
        return self.offsets + self.center

    def to_dict(self):
        return {"center": self.center.tolist(), "offsets": self.offsets.tolist()}

    @classmethod
    def from_dict(cls, d):
        return cls(np.asarray(d["center"], dtype=float), np.asarray(d["offsets"], dtype=float))


@dataclass(frozen=True)
class Spatial:
    delta: np.ndarray
    # row-major (col, row) grid coordinates of the object position reached
    grid_index: tuple = None

    kind = "spatial"


@dataclass(frozen=True)
class StateChange:
    new_offsets: np.ndarray

    kind = "state"


@dataclass(frozen=True)
class GridConfig:
    n_per_side: int = 62
    extent: float = 12.0
    center: tuple = (0.0, 0.0)

    def __post_init__(self):
        if self.n_per_side < 2:
            raise ValueError("n_per_side must be >= 2")
        if self.extent <= 0:
            raise ValueError("extent must be positive")

    @property
    def spacing(self):
        return self.extent / (self.n_per_side - 1)


def random_offsets(rng, n=N_SOURCES, radius=OFFSET_RADIUS):
    """Uniform samples in a disk (sqrt-radius trick)."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    phi = rng.uniform(0.0, 2 * np.pi, n)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi)])


def init_object(rng, n_sources=N_SOURCES, radius=OFFSET_RADIUS):
    return ObjectState(np.zeros(2), random_offsets(rng, n_sources, radius))


def apply_change(obj, change):
    if isinstance(change, Spatial):
        return ObjectState(obj.center + np.asarray(change.delta, dtype=float), obj.offsets)
    if isinstance(change, StateChange):
        return ObjectState(obj.center, np.asarray(change.new_offsets, dtype=float))
    raise TypeError(f"unknown change {change!r}")


def grid_positions(g):
    """Row-major lattice (x varies fastest) of ``n_per_side**2`` positions."""
    n = g.n_per_side
    ticks = np.linspace(-g.extent / 2, g.extent / 2, n)
    xs, ys = np.meshgrid(ticks + g.center[0], ticks + g.center[1])
    return np.column_stack([xs.ravel(), ys.ravel()])


def grid_index_of(k, g):
    """(col, row) of the k-th row-major grid position."""
    return (int(k % g.n_per_side), int(k // g.n_per_side))


def exploration_schedule(rng, g, state_change_prob=0.1, start=(0.0, 0.0), n_sources=N_SOURCES,
                         radius=OFFSET_RADIUS):
    """Visit every grid position once in random order.

    Each visit is a :class:`Spatial` delta from the current center; before each
    one a :class:`StateChange` is inserted with probability ``state_change_prob``.
    """
    if not 0 <= state_change_prob < 1:
        raise ValueError("state_change_prob must be in [0, 1)")
    pos = grid_positions(g)
    order = rng.permutation(len(pos))
    current = np.asarray(start, dtype=float)
    out = []
    for k in order:
        if rng.uniform() < state_change_prob:
            out.append(StateChange(random_offsets(rng, n_sources, radius)))
        out.append(Spatial(pos[k] - current, grid_index_of(k, g)))
        current = pos[k]
    return out
