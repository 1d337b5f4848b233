"""SVG renderings of run artifacts."""
import glob
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .errors import MissingArtifact  # noqa: E402
from .io import read_embedding_csv, read_rows  # noqa: E402
from .metric import embedding_distances  # noqa: E402

PLOTS = ("working-space", "embeddings", "trajectories", "metric-scatter")
SCATTER_FRACTION = 0.05

plt.rcParams["svg.hashsalt"] = "spacediscovery"


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return Path(path)


def _need(run, name):
    p = Path(run) / name
    if not p.exists():
        raise MissingArtifact(f"missing artifact {p}")
    return p


def _pose_tags(run):
    _, rows = read_rows(_need(run, "atlas_pose_tags.csv"))
    A = np.array([[float(v) for v in r] for r in rows]).reshape(-1, 6)
    return A[:, 1:3], A[:, 3:6]


def tip_angle(xy):
    """Angle of the sensor position around the base (the colour key of every plot)."""
    xy = np.asarray(xy, dtype=float).reshape(-1, 2)
    return np.arctan2(xy[:, 1], xy[:, 0])


def plot_working_space(run):
    _, tags = _pose_tags(run)
    fig, ax = plt.subplots(figsize=(5, 5))
    t = np.linspace(0, 2 * np.pi, 200)
    for r in (1.0, 3.0):
        ax.plot(r * np.cos(t), r * np.sin(t), color="tab:green", lw=1)
    ax.scatter(tags[:, 0], tags[:, 1], c=tip_angle(tags[:, :2]), cmap="hsv", s=6, vmin=-np.pi, vmax=np.pi)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"sensor positions of the atlas ({len(tags)})")
    return [_save(fig, Path(run) / "plot_working_space.svg")]


def plot_embeddings(run):
    out = []
    files = sorted(glob.glob(str(Path(run) / "embedding_*d_*.csv")))
    if not files:
        raise MissingArtifact(f"no embedding CSVs in {run}")
    for f in files:
        E, _, tags = read_embedding_csv(f)
        color = tip_angle(tags[:, :2])
        dim = E.shape[1]
        fig = plt.figure(figsize=(5, 5))
        if dim == 3:
            ax = fig.add_subplot(projection="3d")
            ax.scatter(E[:, 0], E[:, 1], E[:, 2], c=color, cmap="hsv", s=6, vmin=-np.pi, vmax=np.pi)
        else:
            ax = fig.add_subplot()
            ax.scatter(E[:, 0], E[:, 1], c=color, cmap="hsv", s=6, vmin=-np.pi, vmax=np.pi)
            ax.set_aspect("equal", adjustable="datalim")
        ax.set_title(Path(f).stem)
        out.append(_save(fig, Path(f).with_suffix(".svg")))
    return out


def plot_trajectories(run):
    _, tags = _pose_tags(run)
    files = sorted(glob.glob(str(Path(run) / "trajectories" / "*.csv")))
    groups = {}
    for f in files:
        key = "_".join(Path(f).stem.split("_")[:2])
        groups.setdefault(key, []).append(f)
    out = []
    for key, fs in sorted(groups.items()):
        fig, ax = plt.subplots(figsize=(5, 5))
        ax.scatter(tags[:, 0], tags[:, 1], s=2, color="0.8")
        for f in fs:
            _, rows = read_rows(f)
            A = np.array([[float(v) for v in r] for r in rows])
            ax.plot(A[:, 6], A[:, 7], lw=1.2)
            ax.plot(A[0, 6], A[0, 7], "k.", ms=5)
        ax.set_aspect("equal")
        ax.set_title(f"external sensor paths, {key}")
        out.append(_save(fig, Path(run) / f"plot_trajectories_{key}.svg"))
    return out


def metric_scatter_points(external, internal, rng, fraction=SCATTER_FRACTION):
    """Random subsample of (external, internal) distance pairs over unordered index pairs."""
    external = np.asarray(external)
    internal = np.asarray(internal)
    i, j = np.triu_indices(len(external), 1)
    k = max(1, int(math.ceil(fraction * len(i)))) if len(i) else 0
    pick = np.sort(rng.choice(len(i), size=k, replace=False)) if k else np.zeros(0, dtype=int)
    return np.column_stack([external[i[pick], j[pick]], internal[i[pick], j[pick]]])


def plot_metric_scatter(run, seed=0):
    _, tags = _pose_tags(run)
    ext = embedding_distances(tags[:, :2])
    out = []
    files = sorted(glob.glob(str(Path(run) / "embedding_*d_*.csv")))
    if not files:
        raise MissingArtifact(f"no embedding CSVs in {run}")
    for f in files:
        E, _, _ = read_embedding_csv(f)
        pts = metric_scatter_points(ext, embedding_distances(E), np.random.default_rng(seed))
        fig, ax = plt.subplots(figsize=(4, 4))
        ax.scatter(pts[:, 0], pts[:, 1], s=2)
        ax.set_xlabel("external distance")
        ax.set_ylabel("internal distance")
        ax.set_title(Path(f).stem)
        out.append(_save(fig, Path(run) / f"plot_metric_{Path(f).stem}.svg"))
    return out


def emit_plots(run, which=PLOTS):
    which = list(which)
    bad = set(which) - set(PLOTS)
    if bad:
        raise ValueError(f"unknown plots {sorted(bad)}")
    fns = {"working-space": plot_working_space, "embeddings": plot_embeddings,
           "trajectories": plot_trajectories, "metric-scatter": plot_metric_scatter}
    out = []
    for w in which:
        out += fns[w](run)
    return out
