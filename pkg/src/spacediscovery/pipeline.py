"""Seeded end-to-end runs with stage-wise persistence."""
import logging
import math
import time
from collections import Counter
from pathlib import Path

import numpy as np

from .cca import CcaParams, cca_fit
from .compensation import SpatialAtlas, explore
from .config import STAGE_DEPS, ExperimentConfig
from .environment import GridConfig, exploration_schedule, init_object
from .errors import MissingArtifact, MissingStage
from .io import (RunDir, dump_json, load_json, read_distance_csv, read_embedding_csv, write_distance_csv,
                 write_embedding_csv, write_rows)
from .metric import embedding_distances, pairwise_distances
from .optics import make_retina
from .reaching import build_graph, draw_pairs, straightness
from .regularize import affine_alignment_residual, equality_sets, regularize_metric
from .simplex import SimplexOptions

log = logging.getLogger(__name__)

STAGES = ("explore", "metrics", "embed", "regularize", "reach")
# what each stage reads from disk when it is not part of the same invocation
REQUIRES = {
    "explore": (),
    "metrics": ("atlas.json",),
    "embed": ("distances_hausdorff.csv",),
    "regularize": ("atlas.json", "distances_hausdorff.csv"),
    "reach": ("atlas.json",),
}
SUMMARY = "summary.json"


def rng_streams(seed):
    """Independent generators: retina, object, schedule, compensation, reaching."""
    names = ("retina", "object", "schedule", "compensation", "reaching")
    seqs = np.random.SeedSequence(seed).spawn(len(names))
    return {n: np.random.default_rng(s) for n, s in zip(names, seqs)}


def cca_params(config, dim):
    c = config.cca(dim)
    seed = int(np.random.SeedSequence([config.seed, 7, dim]).generate_state(1)[0])
    return CcaParams(c.epochs, c.alpha_start, c.alpha_end, c.lambda_start_frac, c.lambda_end_frac, seed)


def grid_config(config):
    return GridConfig(config.grid.n, config.grid.extent)


def origin_grid_index(g):
    # grid coordinates of the initial object center (0, 0)
    k = (0.0 + g.extent / 2) / g.spacing
    return (k, k)


class Pipeline:
    def __init__(self, config, out, workers=1):
        self.config = config.validate()
        self.run = RunDir(out)
        self.run.root.mkdir(parents=True, exist_ok=True)
        self.workers = workers
        self._atlas = None
        self._D = None

    def hash(self, stage):
        return self.config.section_hash(*STAGE_DEPS[stage])

    def _summary(self):
        p = self.run.path(SUMMARY)
        return load_json(p) if p.exists() else {}

    def _update_summary(self, section, stats):
        s = self._summary()
        s["config_hash"] = self.hash("reach")
        s[section] = stats
        dump_json(self.run.path(SUMMARY), s)

    def _write(self, name, stage, writer, *args):
        writer(self.run.path(name), *args)
        self.run.record(name, self.hash(stage))

    # loading ---------------------------------------------------------------
    def atlas(self):
        if self._atlas is None:
            p = self.run.check("atlas.json", self.hash("explore"))
            self._atlas = SpatialAtlas.from_dict(load_json(p)["atlas"])
        return self._atlas

    def distances(self):
        if self._D is None:
            self._D = read_distance_csv(self.run.check("distances_hausdorff.csv", self.hash("metrics")))
        return self._D

    def embedding(self, dim, which):
        stage = "embed" if which == "pre" else "regularize"
        E, _, _ = read_embedding_csv(self.run.check(f"embedding_{dim}d_{which}.csv", self.hash(stage)))
        return E

    # stages ----------------------------------------------------------------
    def explore(self):
        c = self.config
        rngs = rng_streams(c.seed)
        retina = make_retina(rngs["retina"], c.retina.receptors)
        obj = init_object(rngs["object"], c.object.sources, c.object.offset_radius)
        g = grid_config(c)
        schedule = exploration_schedule(rngs["schedule"], g, c.state_change_prob,
                                        n_sources=c.object.sources, radius=c.object.offset_radius)
        cc = c.compensation
        opts = SimplexOptions(cc.initial_scale, cc.ftol, cc.max_iter, cc.restarts, cc.restart_scale)
        pov_kw = dict(step=c.pov.step, min_samples=c.pov.min_samples, closure_tol=c.pov.closure_tol,
                      n_members=c.pov.n_members)
        atlas, episodes = explore(retina, obj, schedule, c.m0, opts, cc.xi, cc.sensory_tol, rngs["compensation"],
                                  origin_grid_index(g), g.spacing, pov_kw, self.workers)
        self._atlas = atlas
        self._write("config.json", "explore", lambda p: p.write_text(c.to_json() + "\n"))
        self._write("atlas.json", "explore", dump_json, {
            "retina": retina.tolist(), "object": obj.to_dict(), "atlas": atlas.to_dict()})
        self._write("episodes.json", "explore", dump_json, [e.to_dict() for e in episodes])
        tags = atlas.pose_tags
        self._write("atlas_pose_tags.csv", "explore", write_rows, ["index", "grid_col", "grid_row", "x", "y", "alpha"],
                    ([i, *atlas.grid_index[i], *tags[i]] for i in range(len(atlas))))
        counts = Counter(_episode_label(e) for e in episodes)
        r = np.hypot(tags[:, 0], tags[:, 1])
        stats = {
            "atlas_size": len(atlas),
            "episodes": len(episodes),
            "spatial_changes": sum(e.kind == "spatial" for e in episodes),
            "state_changes": sum(e.kind == "state" for e in episodes),
            "state_change_successes": sum(e.kind == "state" and e.outcome.success for e in episodes),
            "outcomes": dict(sorted(counts.items())),
            "alpha_spread": float(np.ptp(np.mod(tags[:, 2] - tags[0, 2] + np.pi, 2 * np.pi))),
            "tip_radius_range": [float(r.min()), float(r.max())],
            "annulus_area_estimate": 8 * math.pi / g.spacing ** 2,
        }
        self._update_summary("explore", stats)
        return stats

    def metrics(self):
        atlas = self.atlas()
        D = pairwise_distances(atlas, self.workers)
        self._D = D
        self._write("distances_hausdorff.csv", "metrics", write_distance_csv, D)
        iu = np.triu_indices(len(D), 1)
        stats = {"n": len(D), "max": float(D.max()) if len(D) else 0.0,
                 "mean": float(D[iu].mean()) if len(iu[0]) else 0.0}
        self._update_summary("metrics", stats)
        return stats

    def embed(self):
        atlas, D = self.atlas(), self.distances()
        ref = atlas.pose_tags[:, :2]
        stats = {}
        for dim in self.config.dims:
            E = cca_fit(D, dim, cca_params(self.config, dim))
            self._write(f"embedding_{dim}d_pre.csv", "embed", write_embedding_csv, E, atlas.grid_index,
                        atlas.pose_tags)
            stats[f"{dim}d"] = {"affine_residual": affine_alignment_residual(E, ref)}
        self._update_summary("embed", stats)
        return stats

    def regularize(self):
        atlas, D = self.atlas(), self.distances()
        sets = equality_sets(atlas)
        ref = atlas.pose_tags[:, :2]
        multi = sets.counts >= 2
        stats = {"groups": len(sets.keys), "groups_with_2plus_pairs": int(multi.sum())}
        for dim in self.config.dims:
            W, E, diag = regularize_metric(D, sets, dim, cca_params(self.config, dim),
                                           self.config.regularization.iters)
            self._write(f"embedding_{dim}d_post.csv", "regularize", write_embedding_csv, E, atlas.grid_index,
                        atlas.pose_tags)
            self._write(f"distances_{dim}d_post.csv", "regularize", write_distance_csv, W)
            self._write(f"regularization_{dim}d.json", "regularize", dump_json, [
                {"iteration": d["iteration"], "mean_cv": d["mean_cv"], "max_cv": d["max_cv"]} for d in diag])
            stats[f"{dim}d"] = {
                "affine_residual": affine_alignment_residual(E, ref),
                "mean_cv": [d["mean_cv"] for d in diag],
                "max_cv": [d["max_cv"] for d in diag],
            }
        self._update_summary("regularize", stats)
        return stats

    def reach(self):
        atlas = self.atlas()
        c = self.config.reaching
        n = len(atlas)
        stats = {"prune": c.prune}
        if n < 2:
            self._update_summary("reach", stats)
            return stats
        rng = rng_streams(self.config.seed)["reaching"]
        pairs = draw_pairs(rng, n, c.n_pairs)
        stats["pairs"] = [list(p) for p in pairs]
        tdir = self.run.path("trajectories")
        tdir.mkdir(exist_ok=True)
        for dim in self.config.dims:
            for which in ("pre", "post"):
                D = embedding_distances(self.embedding(dim, which))
                g = build_graph(D, c.prune)
                ratios, trajs = straightness(atlas, D, pairs, np.random.default_rng([self.config.seed, dim]), c.prune)
                for k, tr in enumerate(trajs):
                    if tr is None:
                        continue
                    name = f"trajectories/{dim}d_{which}_{k:02d}.csv"
                    self._write(name, "reach", write_rows,
                                ["step", "node", "m1", "m2", "m3", "m4", "x", "y", "alpha"], tr.rows())
                ok = ratios[np.isfinite(ratios)]
                stats[f"{dim}d_{which}"] = {
                    "max_degree": g.max_degree,
                    "ratios": [None if not np.isfinite(v) else float(v) for v in ratios],
                    "mean_ratio": float(ok.mean()) if len(ok) else None,
                    "unreachable": int((~np.isfinite(ratios)).sum()),
                }
        self._update_summary("reach", stats)
        return stats


def _episode_label(e):
    o = e.outcome
    if not o.success:
        return f"{e.kind}:{o.reason}"
    return f"{e.kind}:success" + (f":{e.note}" if e.note else "")


def run_pipeline(config, out, stages=STAGES, workers=1):
    """Run ``stages`` (in pipeline order) into the directory ``out``; returns the summary dict."""
    unknown = set(stages) - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stages {sorted(unknown)}")
    stages = [s for s in STAGES if s in set(stages)]
    pipe = Pipeline(config, out, workers)
    produced = set()
    for stage in stages:
        for need in REQUIRES[stage]:
            producer = "explore" if need == "atlas.json" else "metrics"
            if producer in produced:
                continue
            if not pipe.run.exists(need):
                raise MissingStage(f"stage {stage!r} needs {need} from stage {producer!r}; run it first")
        if stage == "reach":
            for dim in config.dims:
                for which, producer in (("pre", "embed"), ("post", "regularize")):
                    if producer not in produced and not pipe.run.exists(f"embedding_{dim}d_{which}.csv"):
                        raise MissingStage(f"stage 'reach' needs the {producer!r} stage output")
        t0 = time.perf_counter()
        getattr(pipe, stage)()
        log.info("stage %s finished in %.1fs", stage, time.perf_counter() - t0)
        produced.add(stage)
    dump_json(pipe.run.path("run_metadata.json"), {"finished_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
                                                   "stages": stages, "workers": workers})
    return pipe._summary()


def load_config(run_dir):
    p = Path(run_dir) / "config.json"
    if not p.exists():
        raise MissingArtifact(f"no config snapshot in {run_dir}")
    return ExperimentConfig.from_json(p.read_text())
