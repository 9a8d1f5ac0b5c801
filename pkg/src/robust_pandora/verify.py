"""Numerical confirmation of the closed-form solutions.

Every solver in this package claims a saddle point: a policy whose worst
case over beliefs equals a value no deviation can beat.  The checks here
recompute both sides with grids, random probes, and refinement instead of
the closed forms, and report the two one-sided gaps:

* ``nature_gap``: best belief deviation found, minus the claimed value
  (positive means Nature can beat the claim);
* ``dm_gap``: claimed value minus the best policy deviation against the
  worst belief (positive means the DM left value on the table).

A saddle point passes when both gaps stay within tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._optim import grid_then_golden_max
from .core import (
    CountProfile,
    DomainError,
    HomogeneousSpec,
    IidBinary,
    NatureBelief,
    NeedleP,
    StationaryPolicy,
    StoppingMixture,
    _regret_indep_alphas,
    regret_count_profile,
    regret_indep,
    regret_needle,
    validate_spec,
)
from .corr import single_treasure_equivalent, solve_corr_commitment, solve_corr_intrapersonal
from .indep import solve_indep, weitzman_threshold
from .interim import InterimPolicy, interim_regret

__all__ = [
    "SaddleReport",
    "nature_best_response_indep",
    "saddle_check_indep",
    "saddle_check_corr",
    "interim_grid_oracle",
]


@dataclass(frozen=True)
class SaddleReport:
    """Outcome of a numerical saddle-point check."""

    nature_gap: float
    dm_gap: float
    worst_belief: NatureBelief
    tolerance: float
    passed: bool
    notes: tuple = ()

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        return (
            f"SaddleReport({status}: nature_gap={self.nature_gap:.3e}, "
            f"dm_gap={self.dm_gap:.3e}, tol={self.tolerance:.1e})"
        )


def nature_best_response_indep(policy: StationaryPolicy, spec: HomogeneousSpec, grid_points: int = 2001):
    """Worst i.i.d. success probability against a fixed policy.

    Grid scan over [0, 1] followed by golden-section refinement around the
    best bracket; returns ``(p_star, regret)``.
    """
    validate_spec(spec)
    if grid_points < 2:
        raise DomainError("grid_points must be at least 2")
    return grid_then_golden_max(lambda p: regret_indep(policy, p, spec), 0.0, 1.0, grid_points)


def saddle_check_indep(
    spec: HomogeneousSpec,
    tol: float = 1e-6,
    grid_points: int = 2001,
    dm_probes: int = 10_000,
    seed: int = 0,
) -> SaddleReport:
    """Check the independent-rewards solution without using its closed forms.

    Nature's side is a refined grid search over success probabilities.  The
    DM's side exploits the saddle structure: at the worst-case belief the
    value must be unimprovable, so random policies plus a coordinate descent
    pass (the regret is linear in each stage probability, so descent only
    needs the endpoints) hunt for anything cheaper.
    """
    sol = solve_indep(spec)
    p_star, worst = nature_best_response_indep(sol.policy, spec, grid_points)
    nature_gap = worst - sol.regret

    rng = np.random.default_rng(seed)
    phat = weitzman_threshold(spec)
    probes = rng.random((dm_probes, spec.n))
    values = _regret_indep_alphas(probes, phat, spec)
    best = float(values.min())
    alphas = probes[int(np.argmin(values))].copy()
    for _ in range(3):
        for k in range(spec.n):
            for endpoint in (0.0, 1.0):
                trial = alphas.copy()
                trial[k] = endpoint
                val = float(_regret_indep_alphas(trial, phat, spec))
                if val < best:
                    best = val
                    alphas = trial
    dm_gap = sol.regret - best

    return SaddleReport(
        nature_gap=float(nature_gap),
        dm_gap=float(dm_gap),
        worst_belief=IidBinary(p_star),
        tolerance=tol,
        passed=bool(nature_gap <= tol and dm_gap <= tol),
    )


def _needle_profile(P: float, n: int) -> CountProfile:
    Q = np.zeros(n + 1)
    Q[0] = 1.0 - P
    Q[1] = P
    return CountProfile(Q)


def _plan_regret_vs_needle(m: int, P: float, spec: HomogeneousSpec) -> float:
    w = np.zeros(spec.n + 1)
    w[m] = 1.0
    return regret_count_profile(StoppingMixture(w), _needle_profile(P, spec.n), spec)


def saddle_check_corr(
    spec: HomogeneousSpec,
    tol: float = 1e-9,
    grid_points: int = 1001,
    q_draws: int = 1000,
    mode: str = "commitment",
    seed: int = 0,
) -> SaddleReport:
    """Check a correlated-rewards solution against belief and plan deviations.

    Nature's deviations cover a grid of single-treasure probabilities plus
    random and degenerate count profiles (whose flattened versions must
    dominate them, confirming the hidden-treasure reduction).  The DM's
    deviations are every pure stop-after-m plan against the worst belief in
    commitment mode, and every one-step stage deviation in intrapersonal
    mode.
    """
    validate_spec(spec)
    if spec.n > 8:
        raise DomainError("count-profile deviation scan is limited to n <= 8")
    if mode == "commitment":
        sol = solve_corr_commitment(spec)
    elif mode == "intrapersonal":
        sol = solve_corr_intrapersonal(spec)
    else:
        raise DomainError(f"unknown mode {mode!r}")

    n = spec.n
    grid = np.linspace(0.0, 1.0, int(grid_points))
    needle_values = regret_needle(sol.policy, grid, spec)
    worst_idx = int(np.argmax(needle_values))
    nature_gap = float(needle_values[worst_idx]) - sol.regret
    worst_P = float(grid[worst_idx])

    rng = np.random.default_rng(seed)
    w = StoppingMixture.from_policy(sol.policy)
    profiles = [rng.dirichlet(np.ones(n + 1)) for _ in range(q_draws)]
    for j in range(n + 1):
        vertex = np.zeros(n + 1)
        vertex[j] = 1.0
        profiles.append(vertex)
    flattening_ok = True
    for Q_raw in profiles:
        Q = CountProfile(Q_raw)
        value = regret_count_profile(w, Q, spec)
        flattened = regret_count_profile(w, single_treasure_equivalent(Q), spec)
        if value > flattened + 1e-12:
            flattening_ok = False
        nature_gap = max(nature_gap, value - sol.regret)

    if mode == "commitment":
        P_star = float(sol.worst_case_P[-1])
        dm_best = min(_plan_regret_vs_needle(m, P_star, spec) for m in range(n + 1))
        dm_gap = sol.regret - dm_best
    else:
        dm_gap = -np.inf
        prev = 0.0
        for k in range(1, n + 1):
            P_k = float(sol.worst_case_P[k - 1])
            stay_out = P_k * (spec.ubar - spec.c)
            open_once = (1.0 - P_k / k) * (spec.c + prev)
            dm_gap = max(dm_gap, float(sol.regret_per_k[k - 1]) - min(stay_out, open_once))
            prev = float(sol.regret_per_k[k - 1])

    notes = () if flattening_ok else ("a correlated profile beat its single-treasure flattening",)
    return SaddleReport(
        nature_gap=float(nature_gap),
        dm_gap=float(dm_gap),
        worst_belief=NeedleP(worst_P),
        tolerance=tol,
        passed=bool(nature_gap <= tol and dm_gap <= tol and flattening_ok),
        notes=notes,
    )


def interim_grid_oracle(spec: HomogeneousSpec, m_range=None, alpha_grid=None, p_grid=None):
    """Brute-force min-max over discretized interim plans.

    Scans every staircase plan on the grids and returns the minimizing
    ``(m, alpha, worst_regret)``; the closed-form solver must land within
    one grid step of this.
    """
    validate_spec(spec)
    n = spec.n
    if m_range is None:
        m_range = range(n)
    if alpha_grid is None:
        alpha_grid = np.linspace(0.0, 1.0, 1001)
    if p_grid is None:
        p_grid = np.linspace(0.0, 1.0, 2001)
    p_grid = np.asarray(p_grid, dtype=float)
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    best = None
    for m in m_range:
        # regret is linear in alpha at every p, so the two endpoint policies
        # span the whole alpha axis
        at_zero = interim_regret(InterimPolicy.from_m_alpha(int(m), 0.0, n), p_grid, spec)
        at_one = interim_regret(InterimPolicy.from_m_alpha(int(m), 1.0, n), p_grid, spec)
        values = np.outer(1.0 - alpha_grid, at_zero) + np.outer(alpha_grid, at_one)
        worst = values.max(axis=1)
        idx = int(np.argmin(worst))
        if best is None or worst[idx] < best[2]:
            best = (int(m), float(alpha_grid[idx]), float(worst[idx]))
    return best
