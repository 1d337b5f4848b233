"""Nelder-Mead simplex search with random restarts."""
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded


@dataclass(frozen=True)
class SimplexOptions:
    initial_scale: float = 0.2
    ftol: float = 1e-10
    max_iter: int = 2000
    restarts: int = 5
    restart_scale: float = 0.5
    # restarts are skipped once a run reaches this value
    good_enough: float = None


def _nelder_mead(fun, x0, scale, ftol, max_iter):
    n = len(x0)
    simplex = np.empty((n + 1, n))
    simplex[0] = x0
    for i in range(n):
        simplex[i + 1] = x0
        simplex[i + 1, i] += scale
    fs = np.array([fun(v) for v in simplex])
    nfev = n + 1
    converged = False
    for it in range(max_iter):
        order = np.argsort(fs, kind="stable")
        simplex = simplex[order]
        fs = fs[order]
        # nan spread (unbounded objective) never counts as converged
        with np.errstate(invalid="ignore"):
            spread = fs[-1] - fs[0]
        if spread <= ftol:
            converged = True
            break
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + (centroid - worst)
        fr = fun(xr)
        nfev += 1
        if fr < fs[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = fun(xe)
            nfev += 1
            if fe < fr:
                simplex[-1], fs[-1] = xe, fe
            else:
                simplex[-1], fs[-1] = xr, fr
            continue
        if fr < fs[-2]:
            simplex[-1], fs[-1] = xr, fr
            continue
        if fr < fs[-1]:
            # outside contraction
            xc = centroid + 0.5 * (xr - centroid)
            fc = fun(xc)
            nfev += 1
            if fc <= fr:
                simplex[-1], fs[-1] = xc, fc
                continue
        else:
            xc = centroid + 0.5 * (worst - centroid)
            fc = fun(xc)
            nfev += 1
            if fc < fs[-1]:
                simplex[-1], fs[-1] = xc, fc
                continue
        # shrink towards the best vertex
        simplex[1:] = simplex[0] + 0.5 * (simplex[1:] - simplex[0])
        fs[1:] = [fun(v) for v in simplex[1:]]
        nfev += n
    best = int(np.argmin(fs))
    return simplex[best].copy(), float(fs[best]), converged, nfev


def minimize_simplex(objective, x0, opts=SimplexOptions(), rng=None):
    """Minimize ``objective`` from ``x0`` with restarted Nelder-Mead.

    Coefficients are the standard ones (reflection 1, expansion 2,
    contraction 0.5, shrink 0.5). Each restart perturbs the best point so far
    by a uniform draw of width ``restart_scale``. Returns ``(x, f)``; raises
    :class:`BudgetExceeded` (carrying the best ``x`` and ``f``) when no run met
    the tolerance.
    """
    x0 = np.asarray(x0, dtype=float)
    f0 = objective(x0)
    if not np.isfinite(f0):
        raise ValueError("objective is not finite at x0")
    if rng is None:
        rng = np.random.default_rng(0)
    best_x, best_f, any_conv = None, np.inf, False
    start = x0
    for attempt in range(opts.restarts + 1):
        x, f, conv, _ = _nelder_mead(objective, start, opts.initial_scale, opts.ftol, opts.max_iter)
        any_conv |= conv
        if f < best_f:
            best_x, best_f = x, f
        if opts.good_enough is not None and best_f < opts.good_enough:
            break
        start = best_x + rng.uniform(-opts.restart_scale, opts.restart_scale, size=len(x0))
    if not any_conv:
        raise BudgetExceeded(f"no simplex run converged within {opts.max_iter} iterations", best_x, best_f)
    return best_x, best_f
