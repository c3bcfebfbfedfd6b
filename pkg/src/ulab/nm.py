"""Minimal Nelder-Mead simplex minimizer.

Deterministic given (x0, step): vertex order ties are broken by insertion
order, termination is on simplex diameter or iteration cap.
"""

from __future__ import annotations

import numpy as np


def nelder_mead(f, x0, step=0.1, diam_tol=1e-10, max_iter=2000):
    """Minimize f: R^n -> R from x0. Returns (x_best, f_best, n_iter)."""
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    if np.isscalar(step):
        step = np.full(n, float(step))
    else:
        step = np.asarray(step, dtype=float)
    # alpha, gamma, beta, delta: standard reflect/expand/contract/shrink
    alpha, gamma, beta, delta = 1.0, 2.0, 0.5, 0.5

    simplex = [x0.copy()]
    for i in range(n):
        v = x0.copy()
        v[i] += step[i]
        simplex.append(v)
    fvals = [float(f(v)) for v in simplex]

    it = 0
    for it in range(1, max_iter + 1):
        order = sorted(range(n + 1), key=lambda k: fvals[k])
        simplex = [simplex[k] for k in order]
        fvals = [fvals[k] for k in order]
        diam = max(
            float(np.max(np.abs(simplex[j] - simplex[0]))) for j in range(1, n + 1)
        )
        if diam < diam_tol:
            break
        centroid = np.mean(simplex[:-1], axis=0)
        xr = centroid + alpha * (centroid - simplex[-1])
        fr = float(f(xr))
        if fr < fvals[0]:
            xe = centroid + gamma * (xr - centroid)
            fe = float(f(xe))
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
        elif fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
        else:
            xc = centroid + beta * (simplex[-1] - centroid)
            fc = float(f(xc))
            if fc < fvals[-1]:
                simplex[-1], fvals[-1] = xc, fc
            else:
                for j in range(1, n + 1):
                    simplex[j] = simplex[0] + delta * (simplex[j] - simplex[0])
                    fvals[j] = float(f(simplex[j]))

    k = int(np.argmin(fvals))
    return simplex[k].copy(), fvals[k], it
