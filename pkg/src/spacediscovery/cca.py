"""Curvilinear component analysis driven by a precomputed distance matrix."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CcaParams:
    epochs: int = 50
    alpha_start: float = 0.5
    alpha_end: float = 0.01
    # neighbourhood radius runs geometrically from lambda_start_frac * max(D)
    # down to lambda_end_frac * max(D)
    lambda_start_frac: float = 1.0
    lambda_end_frac: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if not (self.alpha_start >= self.alpha_end > 0):
            raise ValueError("learning rate schedule must be positive and non-increasing")
        if not (self.lambda_start_frac >= self.lambda_end_frac > 0):
            raise ValueError("neighbourhood schedule must be positive and non-increasing")

    def alpha(self, t):
        if self.epochs == 1:
            return self.alpha_start
        return self.alpha_start + (self.alpha_end - self.alpha_start) * t / (self.epochs - 1)

    def radius(self, t, dmax):
        if self.epochs == 1:
            return self.lambda_start_frac * dmax
        r = (self.lambda_end_frac / self.lambda_start_frac) ** (t / (self.epochs - 1))
        return self.lambda_start_frac * dmax * r


def classical_scaling(D, dim):
    """Top-``dim`` coordinates from the double-centred squared distances."""
    D = np.asarray(D, dtype=float)
    n = len(D)
    J = np.eye(n) - 1.0 / n
    B = -0.5 * J @ (D * D) @ J
    w, v = np.linalg.eigh((B + B.T) / 2)
    idx = np.argsort(w)[::-1][:dim]
    w = np.clip(w[idx], 0.0, None)
    X = v[:, idx] * np.sqrt(w)
    # fix the eigenvector sign so results do not depend on LAPACK conventions
    for k in range(X.shape[1]):
        i = np.argmax(np.abs(X[:, k]))
        if X[i, k] < 0:
            X[:, k] = -X[:, k]
    return X


def cca_stress(D, X, lam):
    L = _dist(X)
    F = (L <= lam).astype(float)
    np.fill_diagonal(F, 0.0)
    return float(np.sum((D - L) ** 2 * F))


def _dist(X):
    diff = X[:, None, :] - X[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def cca_fit(D, dim=2, params=CcaParams(), init=None, return_history=False):
    """Embed the points described by ``D`` in ``dim`` dimensions.

    Every epoch takes each point once as pivot (random order) and moves all
    others by ``alpha * (D_ij - L_ij) * (x_j - x_i) / L_ij`` whenever their
    current distance ``L_ij`` is within the neighbourhood radius.
    """
    D = np.asarray(D, dtype=float)
    n = len(D)
    if n < dim + 1:
        raise ValueError(f"need at least {dim + 1} points for a {dim}-d embedding")
    X = classical_scaling(D, dim) if init is None else np.array(init, dtype=float)
    dmax = float(D.max())
    rng = np.random.default_rng(params.seed)
    history = []
    if dmax == 0.0:
        X[:] = 0.0
        return (X, history) if return_history else X
    for t in range(params.epochs):
        a = params.alpha(t)
        lam = params.radius(t, dmax)
        for i in rng.permutation(n):
            delta = X - X[i]
            L = np.sqrt(np.einsum("ij,ij->i", delta, delta))
            mask = (L <= lam) & (L > 0)
            mask[i] = False
            if not mask.any():
                continue
            coef = a * (D[i, mask] - L[mask]) / L[mask]
            X[mask] += coef[:, None] * delta[mask]
        if return_history:
            history.append({"epoch": t, "alpha": a, "radius": lam, "stress": cca_stress(D, X, lam)})
    return (X, history) if return_history else X
