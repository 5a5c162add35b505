"""Nelder-Mead simplex minimisation.

A compact derivative-free simplex search used for the maximum-likelihood
fits. The discretised likelihoods are cheap but not smooth enough to make
gradient methods attractive, and the simplex keeps full control over the
stopping rule and the evaluation budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_REFLECT = 1.0
_EXPAND = 2.0
_CONTRACT = 0.5
_SHRINK = 0.5


@dataclass(frozen=True)
class SimplexResult:
    x: np.ndarray
    fx: float
    evaluations: int
    converged: bool


def nelder_mead(fn, x0, step=0.25, max_evals=10_000,
                rel_f_tol=1e-8, x_tol=1e-6) -> SimplexResult:
    """Minimise ``fn`` starting from ``x0``.

    Stops as converged when the relative spread of the simplex function
    values falls below ``rel_f_tol`` or the simplex diameter falls below
    ``x_tol``; stops unconverged when ``max_evals`` evaluations are spent
    (the budget is checked between iterations, so the final iteration may
    overshoot it by a few evaluations). ``fn`` may return ``inf`` for
    out-of-domain points.

    Parameters
    ----------
    fn : callable
        Objective, mapping a 1-d parameter array to a float.
    x0 : array_like
        Starting point; the initial simplex offsets each coordinate by
        ``step``.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    dim = x0.size
    evals = 0

    def call(x):
        nonlocal evals
        evals += 1
        v = fn(x)
        return float(v) if math.isfinite(v) else math.inf

    points = [x0.copy()]
    for i in range(dim):
        p = x0.copy()
        p[i] += step
        points.append(p)
    values = [call(p) for p in points]
    if not math.isfinite(values[0]):
        raise ValueError("objective is not finite at the starting point")

    def order():
        idx = np.argsort(values, kind="stable")
        return [points[i] for i in idx], [values[i] for i in idx]

    points, values = order()

    while evals < max_evals:
        best, worst = values[0], values[-1]
        spread_ok = (worst - best) <= rel_f_tol * max(1.0, abs(best))
        diameter = max(
            float(np.max(np.abs(p - points[0]))) for p in points[1:]
        )
        if spread_ok or diameter <= x_tol:
            return SimplexResult(points[0], values[0], evals, True)

        centroid = np.mean(points[:-1], axis=0)
        reflected = centroid + _REFLECT * (centroid - points[-1])
        f_reflected = call(reflected)

        if f_reflected < values[0]:
            expanded = centroid + _EXPAND * (reflected - centroid)
            f_expanded = call(expanded)
            if f_expanded < f_reflected:
                points[-1], values[-1] = expanded, f_expanded
            else:
                points[-1], values[-1] = reflected, f_reflected
        elif f_reflected < values[-2]:
            points[-1], values[-1] = reflected, f_reflected
        else:
            if f_reflected < values[-1]:
                contracted = centroid + _CONTRACT * (reflected - centroid)
            else:
                contracted = centroid + _CONTRACT * (points[-1] - centroid)
            f_contracted = call(contracted)
            if f_contracted < min(f_reflected, values[-1]):
                points[-1], values[-1] = contracted, f_contracted
            else:
                for i in range(1, len(points)):
                    points[i] = points[0] + _SHRINK * (points[i] - points[0])
                    values[i] = call(points[i])
        points, values = order()

    return SimplexResult(points[0], values[0], evals, False)
