"""CSV/JSON persistence for run directories."""
import csv
import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import CorruptArtifact, MissingArtifact

MANIFEST = "manifest.json"


def _num(v):
    # repr of a Python float is the shortest exact round-trip form
    if isinstance(v, (np.floating, float)):
        return repr(float(v))
    if isinstance(v, (np.integer, int)):
        return str(int(v))
    return v


def write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if header is not None:
            w.writerow(header)
        for r in rows:
            w.writerow([_num(v) for v in r])


def read_rows(path, header=True):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return (rows[0], rows[1:]) if header else (None, rows)


def write_distance_csv(path, D):
    """First line ``n``, then one line per row ``i`` with ``D[i, i+1:]``."""
    D = np.asarray(D, dtype=float)
    n = len(D)
    rows = [D[i, i + 1:] for i in range(n - 1)]
    write_rows(path, [n], rows)


def read_distance_csv(path):
    header, rows = read_rows(path)
    n = int(header[0])
    D = np.zeros((n, n))
    for i, r in enumerate(rows):
        vals = np.array([float(v) for v in r])
        D[i, i + 1:] = vals
        D[i + 1:, i] = vals
    return D


def write_embedding_csv(path, E, grid_index, pose_tags):
    E = np.asarray(E, dtype=float)
    dim = E.shape[1]
    header = ["index"] + [f"c{k}" for k in range(dim)] + ["grid_col", "grid_row", "x", "y", "alpha"]
    rows = ([i, *E[i], *grid_index[i], *pose_tags[i]] for i in range(len(E)))
    write_rows(path, header, rows)


def read_embedding_csv(path):
    header, rows = read_rows(path)
    dim = sum(1 for h in header if h.startswith("c"))
    A = np.array([[float(v) for v in r] for r in rows]).reshape(-1, len(header))
    return A[:, 1:1 + dim], A[:, 1 + dim:3 + dim], A[:, 3 + dim:]


def dump_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class RunDir:
    """A run directory with a manifest of artifact hashes and config dependencies."""

    def __init__(self, root):
        self.root = Path(root)

    def path(self, name):
        return self.root / name

    def manifest(self):
        p = self.path(MANIFEST)
        return load_json(p) if p.exists() else {}

    def record(self, name, config_hash):
        m = self.manifest()
        m[name] = {"sha256": sha256(self.path(name)), "config_hash": config_hash}
        dump_json(self.path(MANIFEST), m)

    def exists(self, name):
        return self.path(name).exists()

    def check(self, name, config_hash):
        """Verify an artifact exists, is unmodified, and matches the current config."""
        p = self.path(name)
        if not p.exists():
            raise MissingArtifact(f"missing artifact {p}")
        entry = self.manifest().get(name)
        if entry is None:
            raise CorruptArtifact(f"{name} is not listed in the manifest")
        if entry["sha256"] != sha256(p):
            raise CorruptArtifact(f"{name} content hash does not match the manifest")
        if entry["config_hash"] != config_hash:
            raise CorruptArtifact(f"{name} was produced under a different configuration")
        return p
