"""One-dimensional search helpers shared by the solvers and verifiers."""

from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, lo: float, hi: float, xtol: float = 1e-12):
    """Locate a maximum of ``f`` on [lo, hi] to within ``xtol`` in x.

    Assumes ``f`` is unimodal on the bracket; callers first localize the
    bracket with a coarse grid.  Returns ``(x, f(x))``.
    """
    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            # ties drift right so plateaus at the upper edge keep their argmax
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2.0
    return x, f(x)


def grid_then_golden_max(f, lo: float, hi: float, grid_points: int, xtol: float = 1e-12):
    """Coarse grid scan followed by golden-section polish around the best point.

    ``f`` must accept a numpy array for the grid pass and a scalar for the
    refinement.  Returns ``(x, f(x))`` for the refined maximizer.
    """
    xs = np.linspace(lo, hi, int(grid_points))
    vals = np.asarray(f(xs))
    best = int(np.argmax(vals))
    a = xs[max(best - 1, 0)]
    b = xs[min(best + 1, xs.size - 1)]
    x, fx = golden_section_max(lambda t: float(f(t)), float(a), float(b), xtol)
    if vals[best] > fx:
        return float(xs[best]), float(vals[best])
    return x, fx
