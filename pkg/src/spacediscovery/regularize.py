"""Equalizing internal distances of equivalent displacements, then re-embedding."""
from dataclasses import dataclass, replace

import numpy as np

from .cca import CcaParams, cca_fit
from .errors import DimensionMismatch
from .metric import embedding_distances


def _key(dx, dy):
    # grid offsets are integral except for pairs involving an off-lattice origin
    return tuple(int(v) if float(v).is_integer() else float(v) for v in (dx, dy))


@dataclass
class EqualitySets:
    """Unordered POV pairs grouped by the grid displacement separating them.

    ``pairs[k] = (i, j)`` is oriented so that its offset ``grid[j] - grid[i]``
    lies in the canonical half-plane (dx > 0, or dx == 0 and dy > 0);
    ``labels[k]`` indexes ``keys``.
    """
    pairs: np.ndarray
    labels: np.ndarray
    keys: list

    @property
    def counts(self):
        return np.bincount(self.labels, minlength=len(self.keys))

    @property
    def groups(self):
        out = {k: [] for k in self.keys}
        for (i, j), lab in zip(self.pairs.tolist(), self.labels.tolist()):
            out[self.keys[lab]].append((i, j))
        return out

    def group_means(self, D):
        vals = D[self.pairs[:, 0], self.pairs[:, 1]]
        return np.bincount(self.labels, vals, len(self.keys)) / self.counts

    def group_cv(self, D):
        """Per-group coefficient of variation (std / mean) of the member distances."""
        vals = D[self.pairs[:, 0], self.pairs[:, 1]]
        c = self.counts
        mean = np.bincount(self.labels, vals, len(self.keys)) / c
        sq = np.bincount(self.labels, (vals - mean[self.labels]) ** 2, len(self.keys)) / c
        with np.errstate(invalid="ignore", divide="ignore"):
            cv = np.sqrt(sq) / mean
        return np.where(mean > 0, cv, 0.0)


def equality_sets(atlas):
    """Group every unordered pair of atlas POVs by their grid-index offset."""
    grid = np.asarray(getattr(atlas, "grid_index", atlas), dtype=float).reshape(-1, 2)
    n = len(grid)
    i, j = np.triu_indices(n, 1)
    off = grid[j] - grid[i]
    flip = (off[:, 0] < 0) | ((off[:, 0] == 0) & (off[:, 1] < 0))
    a = np.where(flip, j, i)
    b = np.where(flip, i, j)
    off[flip] = -off[flip]
    # exact on half-integers, so np.unique sees each displacement once
    doubled = np.rint(off * 2).astype(np.int64)
    uniq, labels = np.unique(doubled, axis=0, return_inverse=True)
    keys = [_key(dx / 2, dy / 2) for dx, dy in uniq.tolist()]
    return EqualitySets(np.column_stack([a, b]).astype(np.int64), labels.ravel().astype(np.int64), keys)


def equalize(D, sets):
    """Replace every grouped distance by its group mean."""
    out = np.array(D, dtype=float)
    means = sets.group_means(out)
    v = means[sets.labels]
    out[sets.pairs[:, 0], sets.pairs[:, 1]] = v
    out[sets.pairs[:, 1], sets.pairs[:, 0]] = v
    return out


def regularize_metric(D0, sets, dim=2, params=CcaParams(), iters=10):
    """Alternate group averaging and CCA re-embedding ``iters`` times.

    Returns ``(D_final, E_final, diagnostics)`` where diagnostics has one entry
    per metric seen (the input, then each re-embedded metric) with the
    per-group coefficient of variation.
    """
    W = np.array(D0, dtype=float)
    multi = sets.counts >= 2
    diagnostics = []
    E = None
    for it in range(iters):
        cv = sets.group_cv(W)
        diagnostics.append(_diag(it, cv, multi))
        target = equalize(W, sets)
        E = cca_fit(target, dim, replace(params, seed=params.seed + it))
        W = embedding_distances(E)
    diagnostics.append(_diag(iters, sets.group_cv(W), multi))
    return W, E, diagnostics


def _diag(it, cv, multi):
    sel = cv[multi] if multi.any() else np.zeros(1)
    return {"iteration": it, "mean_cv": float(sel.mean()), "max_cv": float(sel.max()), "cv": cv}


def affine_alignment_residual(E, reference):
    """RMS residual of the least-squares affine map ``E -> reference``, over the reference diameter."""
    E = np.asarray(E, dtype=float)
    ref = np.asarray(reference, dtype=float)
    if E.ndim == 1:
        E = E[:, None]
    if len(E) != len(ref):
        raise DimensionMismatch(f"{len(E)} embedded points vs {len(ref)} reference points")
    if len(ref) < 2:
        return 0.0
    A = np.column_stack([E, np.ones(len(E))])
    coef, *_ = np.linalg.lstsq(A, ref, rcond=None)
    res = ref - A @ coef
    rms = np.sqrt(np.mean(np.sum(res * res, axis=1)))
    diam = embedding_distances(ref).max()
    return float(rms / diam) if diam > 0 else 0.0
