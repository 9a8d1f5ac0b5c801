"""Search rules when regret is measured against a distribution-aware oracle.

The ex-post benchmark punishes the DM both for searching the wrong amount
and for searching in the wrong order.  Scoring instead against an oracle
who knows only the success probability (not the realizations) removes the
order component: only search intensity matters.  The optimal plan then
takes a threshold form, searching ``m`` boxes for sure and randomizing on
one more, and ``m`` grows with the menu: with selection error gone, bigger
menus raise the fear of missing out and push toward more search, the
opposite of the ex-post prediction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._optim import grid_then_golden_max
from .core import ConvergenceError, DomainError, HomogeneousSpec, _probability_array, validate_spec
from .indep import weitzman_threshold

__all__ = [
    "InterimPolicy",
    "InterimReport",
    "exhaustive_utility",
    "interim_regret",
    "interim_regret_high_belief",
    "solve_interim",
    "interim_two_box_intrapersonal",
]

# offset above the indifference belief for the inner maximizations; the
# objective vanishes at the threshold itself so the exact value is immaterial
_P_EDGE = 1e-9


@dataclass(frozen=True)
class InterimPolicy:
    """Threshold plan: open ``m`` boxes for sure, one more with probability ``alpha``.

    ``phi[j - 1]`` is the probability that at least ``n - j + 1`` boxes get
    opened (absent an early success), so the vector is a monotone staircase:
    zeros, then ``alpha``, then ones.
    """

    m: int
    alpha: float
    phi: np.ndarray

    def __post_init__(self):
        phi = _probability_array(self.phi, "phi")
        n = phi.size
        if not 0 <= self.m <= n - 1:
            raise DomainError(f"m must lie in 0..{n - 1}, got {self.m}")
        want = np.zeros(n)
        want[n - self.m - 1] = self.alpha
        want[n - self.m :] = 1.0
        if not np.allclose(phi, want, atol=1e-12):
            raise DomainError("phi must be the zeros/alpha/ones staircase implied by (m, alpha)")
        phi.flags.writeable = False
        object.__setattr__(self, "phi", phi)

    @property
    def n(self) -> int:
        return self.phi.size

    @classmethod
    def from_m_alpha(cls, m: int, alpha: float, n: int) -> "InterimPolicy":
        if not 0 <= m <= n - 1:
            raise DomainError(f"m must lie in 0..{n - 1}, got {m}")
        if not 0.0 <= alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
        phi = np.zeros(n)
        phi[n - m - 1] = alpha
        phi[n - m :] = 1.0
        return cls(m=int(m), alpha=float(alpha), phi=phi)


@dataclass(frozen=True)
class InterimReport:
    """Solved interim plan with its equalization diagnostics."""

    policy: InterimPolicy
    regret: float
    worst_p_high: float
    residual: float
    degenerate_tie: bool = False


def exhaustive_utility(p: float, n: int, spec: HomogeneousSpec) -> float:
    """Expected payoff of searching up to ``n`` boxes, stopping on success."""
    validate_spec(spec)
    if n < 1:
        raise DomainError("n must be at least 1")
    ubar, c = spec.ubar, spec.c
    i = np.arange(1, n + 1)
    return float(np.sum(p * (1 - p) ** (i - 1) * (ubar - i * c)) - (1 - p) ** n * n * c)


def _utilities_upto(p, n: int, spec: HomogeneousSpec):
    """U(p, k) for k = 1..n, vectorized over p; U(p, k+1) - U(p, k) telescopes."""
    p = np.asarray(p, dtype=float)
    ubar, c = spec.ubar, spec.c
    increments = np.empty((n, *p.shape))
    increments[0] = p * ubar - c
    for j in range(1, n):
        increments[j] = (1 - p) ** j * (p * ubar - c)
    return np.cumsum(increments, axis=0)


def interim_regret(policy: InterimPolicy, p, spec: HomogeneousSpec):
    """Exact interim regret of a threshold plan at success probability ``p``.

    The oracle earns ``max(U(p, n), 0)``; the DM earns the mixture of
    ``U(p, k)`` over her realized search depth.  ``p`` may be scalar or an
    array.
    """
    validate_spec(spec)
    n = spec.n
    if policy.n != n:
        raise DomainError(f"policy has {policy.n} stages but spec has n={n}")
    p = np.asarray(p, dtype=float)
    U = _utilities_upto(p, n, spec)
    phi = policy.phi
    oracle = np.maximum(U[n - 1], 0.0)
    dm = phi[0] * U[n - 1]
    for k in range(1, n):
        dm = dm + (phi[n - k] - phi[n - k - 1]) * U[k - 1]
    out = oracle - dm
    return float(out) if out.ndim == 0 else out


def interim_regret_high_belief(policy: InterimPolicy, p, spec: HomogeneousSpec):
    """Algebraic twin of :func:`interim_regret`, valid for p at or above c/ubar.

    Uses the telescoped form sum_j (1 - phi_{n-j}) (1-p)^j (p ubar - c);
    the two routes agreeing is a correctness check on both.
    """
    validate_spec(spec)
    n = spec.n
    p = np.asarray(p, dtype=float)
    base = p * spec.ubar - spec.c
    out = np.zeros_like(base)
    for j in range(n):
        out = out + (1.0 - policy.phi[n - j - 1]) * (1 - p) ** j * base
    return float(out) if out.ndim == 0 else out


def _tail_objective(m: int, spec: HomogeneousSpec):
    """max over p > p_hat of sum_{i=m+1..n-1} (1-p)^i (p ubar - c), plus argmax."""
    n, ubar, c = spec.n, spec.ubar, spec.c
    lo = weitzman_threshold(spec) + _P_EDGE
    if m + 1 > n - 1:
        return 1.0, 0.0  # empty sum; report the harmless argmax p = 1

    def f(p):
        p = np.asarray(p, dtype=float)
        total = np.zeros_like(p)
        for i in range(m + 1, n):
            total = total + (1 - p) ** i
        return total * (p * ubar - c)

    return grid_then_golden_max(f, lo, 1.0, 2001)


def solve_interim(spec: HomogeneousSpec, *, bisect_tol: float = 1e-12, max_iter: int = 200) -> InterimReport:
    """Commitment plan minimizing worst-case interim regret.

    Picks the largest ``m`` whose sure-search cost still falls short of the
    worst high-belief regret left after those ``m`` boxes, then bisects the
    randomization weight until the no-reward branch (regret ``(m + alpha) c``)
    equals the maximized high-belief branch.
    """
    validate_spec(spec)
    n, ubar, c = spec.n, spec.ubar, spec.c

    m = 0
    degenerate = False
    for cand in range(n - 1, -1, -1):
        _, tail = _tail_objective(cand, spec)
        if abs(cand * c - tail) < 1e-12:
            degenerate = True
        if cand * c < tail:
            m = cand
            break

    def residual_at(m: int, alpha: float):
        def f(p):
            p = np.asarray(p, dtype=float)
            coeff = (1.0 - alpha) * (1 - p) ** m
            for i in range(m + 1, n):
                coeff = coeff + (1 - p) ** i
            return coeff * (p * ubar - c)

        p_star, worst = grid_then_golden_max(f, weitzman_threshold(spec) + _P_EDGE, 1.0, 2001)
        return (m + alpha) * c - worst, p_star

    # the largest-m rule can land one segment short: if even alpha = 1 leaves
    # the high-belief branch dominant, the branches cross while the next box
    # is the randomized one
    if m < n - 1 and residual_at(m, 1.0)[0] < 0.0:
        m += 1

    lo_res, _ = residual_at(m, 0.0)
    hi_res, _ = residual_at(m, 1.0)
    if lo_res > 0.0 or hi_res < 0.0:
        raise ConvergenceError(
            f"no equalizing randomization in [0, 1] at m={m} (endpoints {lo_res:.3e}, {hi_res:.3e})"
        )
    lo, hi = 0.0, 1.0
    for _ in range(max_iter):
        mid = (lo + hi) / 2.0
        res, _ = residual_at(m, mid)
        if res < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= bisect_tol:
            break
    alpha = (lo + hi) / 2.0
    res, p_star = residual_at(m, alpha)
    if abs(res) > 1e-9:
        raise ConvergenceError(f"equalization residual {res:.3e} after bisection")
    policy = InterimPolicy.from_m_alpha(m, alpha, n)
    return InterimReport(
        policy=policy,
        regret=(m + alpha) * c,
        worst_p_high=p_star,
        residual=abs(res),
        degenerate_tie=degenerate,
    )


def interim_two_box_intrapersonal(spec: HomogeneousSpec):
    """Stage search probabilities of a sophisticated DM under interim regret.

    Two boxes, no commitment: the single-box stage equalizes the no-reward
    and sure-reward scenarios exactly as in the ex-post problem, and the
    first stage then solves alpha_2 = (ubar - c) / (ubar + alpha_1 c).  The
    first move is strictly less likely than the second, the overload pattern
    again.
    """
    validate_spec(spec)
    ubar, c = spec.ubar, spec.c
    alpha_1 = (ubar - c) / ubar
    alpha_2 = (ubar - c) / (ubar + alpha_1 * c)
    return alpha_1, alpha_2
