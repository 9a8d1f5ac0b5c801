"""Domain types and exact regret evaluators for robust sequential search.

A decision maker (DM) faces ``n`` closed boxes.  Opening one costs ``c`` and
reveals its reward, which in the baseline model is either a high value
``ubar`` or zero.  The DM may stop at any time and keep the best reward
found so far, or take an outside option worth zero.  Performance is measured
by expected ex-post regret: the payoff of an oracle who sees every realized
reward in advance, minus the DM's own expected payoff.

The DM does not know the joint reward distribution; an adversarial Nature
picks it.  By symmetry both sides can be reduced to exchangeable objects:
the DM opens uniformly random boxes and is described by one search
probability per remaining-box count, while Nature is described by a small
parametric family of exchangeable beliefs (:class:`IidBinary`,
:class:`NeedleP`, :class:`CountProfile`, and the heterogeneous /
continuous-support variants).

Everything in this module is a pure function of its inputs and safe to call
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "DomainError",
    "SizeError",
    "ConvergenceError",
    "SeedError",
    "HomogeneousSpec",
    "StationaryPolicy",
    "StoppingMixture",
    "IidBinary",
    "NeedleP",
    "CountProfile",
    "HeteroPVector",
    "TwoPointMixture",
    "NatureBelief",
    "validate_spec",
    "as_probability",
    "regret_indep",
    "regret_needle",
    "regret_count_profile",
]

# Float drift tolerated when interpreting a number as a probability.  Larger
# violations are treated as caller errors, not noise.
PROB_SLACK = 1e-15


class DomainError(ValueError):
    """Parameters violate the model's standing assumptions."""


class SizeError(ValueError):
    """Instance is too large for the exponential subset recursion."""


class ConvergenceError(RuntimeError):
    """An iterative search failed to reach its tolerance within budget."""


class SeedError(ValueError):
    """Simulation request exceeds the reproducible substream space."""


def as_probability(x: float, what: str = "probability") -> float:
    """Clamp ``x`` to [0, 1], tolerating drift up to ``PROB_SLACK``."""
    x = float(x)
    if not np.isfinite(x) or x < -PROB_SLACK or x > 1.0 + PROB_SLACK:
        raise DomainError(f"{what} must lie in [0, 1], got {x!r}")
    return min(max(x, 0.0), 1.0)


def _probability_array(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or arr.min() < -PROB_SLACK or arr.max() > 1.0 + PROB_SLACK):
        raise DomainError(f"every entry of {what} must lie in [0, 1]")
    return np.clip(arr, 0.0, 1.0)


# ---------------------------------------------------------------------------
# Problem specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousSpec:
    """Symmetric search problem: ``n`` boxes, high reward ``ubar``, cost ``c``."""

    ubar: float
    c: float
    n: int


def validate_spec(spec: HomogeneousSpec) -> HomogeneousSpec:
    """Return ``spec`` unchanged if it satisfies the standing assumptions.

    Raises :class:`DomainError` when ``ubar <= 0``, the cost is outside the
    open interval ``(0, ubar)``, or ``n`` is not a positive integer.  The
    cost bounds are strict: a free search or a search that can never pay for
    itself both degenerate the problem.
    """
    if not np.isfinite(spec.ubar) or spec.ubar <= 0.0:
        raise DomainError(f"high reward must be positive, got {spec.ubar!r}")
    if not np.isfinite(spec.c) or spec.c <= 0.0 or spec.c >= spec.ubar:
        raise DomainError(f"search cost must lie in (0, {spec.ubar}), got {spec.c!r}")
    if int(spec.n) != spec.n or spec.n < 1:
        raise DomainError(f"box count must be a positive integer, got {spec.n!r}")
    return spec


# ---------------------------------------------------------------------------
# DM strategies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StationaryPolicy:
    """Search probabilities indexed by the number of unopened boxes.

    ``alphas[k - 1]`` is the probability of opening a uniformly random box
    when ``k`` boxes remain unopened and no high reward has been found.
    Recursions consume the vector from ``k = n`` down to ``k = 1``.
    """

    alphas: np.ndarray

    def __post_init__(self):
        arr = _probability_array(self.alphas, "alphas")
        if arr.ndim != 1 or arr.size < 1:
            raise DomainError("alphas must be a non-empty 1-D vector")
        arr.flags.writeable = False
        object.__setattr__(self, "alphas", arr)

    @property
    def n(self) -> int:
        return self.alphas.size

    def alpha(self, k: int) -> float:
        """Opening probability with ``k`` boxes remaining (1-based)."""
        return float(self.alphas[k - 1])


@dataclass(frozen=True)
class StoppingMixture:
    """Distribution over plans that stop after exactly ``m`` failed openings.

    ``w[m]`` is the probability that the DM quits after ``m`` fruitless
    openings; ``w[n]`` is the probability of an exhaustive search.
    """

    w: np.ndarray

    def __post_init__(self):
        arr = _probability_array(self.w, "stopping weights")
        if arr.ndim != 1 or arr.size < 2:
            raise DomainError("stopping mixture needs weights for m = 0..n")
        if abs(arr.sum() - 1.0) > 1e-9:
            raise DomainError("stopping weights must sum to 1")
        arr.flags.writeable = False
        object.__setattr__(self, "w", arr)

    @property
    def n(self) -> int:
        return self.w.size - 1

    @classmethod
    def from_policy(cls, policy: StationaryPolicy) -> "StoppingMixture":
        """Marginal stopping-time distribution induced by a stationary policy.

        The plan stops after ``m < n`` failures when the first ``m`` search
        draws continue and the draw with ``n - m`` boxes left stops:
        ``w_m = (1 - alpha_{n-m}) * prod_{j=n-m+1..n} alpha_j``.
        """
        alphas = policy.alphas
        n = alphas.size
        w = np.empty(n + 1)
        tail = 1.0
        for m in range(n):
            a = alphas[n - m - 1]
            w[m] = (1.0 - a) * tail
            tail *= a
        w[n] = tail
        return cls(w)


# ---------------------------------------------------------------------------
# Nature strategies (exchangeable beliefs)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IidBinary:
    """Each box independently holds the high reward with probability ``p``."""

    p: float

    def __post_init__(self):
        object.__setattr__(self, "p", as_probability(self.p, "p"))


@dataclass(frozen=True)
class NeedleP:
    """At most one box, uniformly placed, holds the high reward (prob. ``P``)."""

    P: float

    def __post_init__(self):
        object.__setattr__(self, "P", as_probability(self.P, "P"))


@dataclass(frozen=True)
class CountProfile:
    """Exchangeable belief given by the distribution of the high-reward count.

    ``Q[j]`` is the probability that exactly ``j`` of the ``n`` boxes hold
    the high reward, the treasure positions being a uniformly random subset.
    """

    Q: np.ndarray

    def __post_init__(self):
        arr = _probability_array(self.Q, "Q")
        if arr.ndim != 1 or arr.size < 2:
            raise DomainError("count profile needs entries for j = 0..n")
        if abs(arr.sum() - 1.0) > 1e-12:
            raise DomainError("count profile must sum to 1")
        arr.flags.writeable = False
        object.__setattr__(self, "Q", arr)

    @property
    def n(self) -> int:
        return self.Q.size - 1


@dataclass(frozen=True)
class HeteroPVector:
    """Independent per-box success probabilities for heterogeneous boxes."""

    p: tuple

    def __post_init__(self):
        probs = tuple(as_probability(x, "p_i") for x in self.p)
        object.__setattr__(self, "p", probs)


@dataclass(frozen=True)
class TwoPointMixture:
    """Mixture over reward pairs ``(u, v)`` with ``0 <= v <= u <= ubar``.

    Nature's pure strategies in the two-box continuous-support problem; the
    ``weight`` entries must sum to one.
    """

    atoms: tuple  # ((u, v), weight), ...

    def __post_init__(self):
        atoms = tuple(((float(u), float(v)), float(w)) for (u, v), w in self.atoms)
        if not atoms:
            raise DomainError("mixture needs at least one atom")
        for (u, v), w in atoms:
            if v < -PROB_SLACK or v > u + PROB_SLACK:
                raise DomainError(f"reward pair must satisfy 0 <= v <= u, got {(u, v)}")
            if w < -PROB_SLACK:
                raise DomainError("mixture weights must be nonnegative")
        if abs(sum(w for _, w in atoms) - 1.0) > 1e-9:
            raise DomainError("mixture weights must sum to 1")
        object.__setattr__(self, "atoms", atoms)


NatureBelief = Union[IidBinary, NeedleP, CountProfile, HeteroPVector, TwoPointMixture]


# ---------------------------------------------------------------------------
# Exact regret evaluators (binary rewards)
# ---------------------------------------------------------------------------


def _alphas_for(policy: StationaryPolicy, spec: HomogeneousSpec) -> np.ndarray:
    validate_spec(spec)
    if policy.n != spec.n:
        raise DomainError(f"policy has {policy.n} stages but spec has n={spec.n}")
    return policy.alphas


def _regret_indep_alphas(alphas: np.ndarray, p, spec: HomogeneousSpec):
    """Recursion behind :func:`regret_indep`, broadcasting over policies or p.

    ``alphas`` may have shape ``(..., n)``; ``p`` broadcasts against the
    leading axes.
    """
    ubar, c = spec.ubar, spec.c
    n = alphas.shape[-1]
    p = _probability_array(p, "p")
    fail = 1.0 - p
    r = np.zeros(np.broadcast_shapes(alphas.shape[:-1], p.shape))
    for k in range(1, n + 1):
        a = alphas[..., k - 1]
        r = (1.0 - a) * (1.0 - fail**k) * (ubar - c) + a * fail * (c + r)
    return r


def regret_indep(policy: StationaryPolicy, p, spec: HomogeneousSpec):
    """Expected ex-post regret under i.i.d. binary rewards with success rate ``p``.

    Evaluates the backward recursion with ``k`` boxes remaining

        R_k = (1 - a_k) (1 - (1-p)^k) (ubar - c) + a_k (1-p) (c + R_{k-1}),

    with ``R_0 = 0``: not searching forgoes the oracle's net reward whenever
    at least one box is full, while a fruitless opening wastes ``c`` and
    passes to the smaller problem.  ``p`` may be a scalar or an array.
    """
    alphas = _alphas_for(policy, spec)
    out = _regret_indep_alphas(alphas, p, spec)
    return float(out) if out.ndim == 0 else out


def regret_needle(policy: StationaryPolicy, P, spec: HomogeneousSpec):
    """Expected regret when at most one box holds the high reward.

    ``P`` is the probability that the treasure exists given ``n`` remaining
    boxes.  A failed opening is good news: the belief updates to
    ``P' = P (k-1) / (k - P)`` on the ``k-1`` remaining boxes.  ``P`` may be
    a scalar or an array.
    """
    alphas = _alphas_for(policy, spec)
    ubar, c = spec.ubar, spec.c

    def rec(k: int, Pk):
        if k == 0:
            return np.zeros_like(Pk)
        a = alphas[k - 1]
        miss = 1.0 - Pk / k
        if k == 1:
            cont = c  # no boxes left after the opening
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                Pnext = np.where(miss > 0.0, Pk * (k - 1) / (k - Pk), 0.0)
            cont = c + rec(k - 1, Pnext)
        return (1.0 - a) * Pk * (ubar - c) + a * miss * cont

    out = rec(spec.n, _probability_array(P, "P"))
    return float(out) if out.ndim == 0 else out


def first_success_probabilities(Q) -> np.ndarray:
    """First-success probabilities under a uniformly random opening order.

    Given the count profile ``Q`` (``Q[j]`` = probability that exactly ``j``
    boxes are full), returns ``q`` with ``q[k-1]`` the probability that a
    DM opening boxes in uniformly random order finds the first high reward
    on her ``k``-th opening:

        q_k = sum_j C_k^j Q_j,
        C_k^j = j / (n - k + 1) * prod_{i=0..k-2} (n - i - j) / (n - i).
    """
    Q = np.asarray(Q, dtype=float)
    n = Q.size - 1
    q = np.zeros(n)
    for k in range(1, n + 1):
        acc = 0.0
        for j in range(1, n + 1):
            coeff = j / (n - k + 1)
            for i in range(k - 1):
                coeff *= (n - i - j) / (n - i)
                if coeff == 0.0:
                    break
            acc += coeff * Q[j]
        q[k - 1] = acc
    return q


def regret_count_profile(mixture: StoppingMixture, Q: CountProfile, spec: HomogeneousSpec) -> float:
    """Exact regret of a stopping mixture against a count-profile belief.

    Conditional regret of the plan that stops after ``m`` failures:
    a first success on opening ``k <= m`` wastes ``(k-1) c`` relative to the
    oracle; a success the plan never reaches costs ``ubar - c + m c``; and
    when no box is full the ``m`` openings are pure waste ``m c``.
    """
    validate_spec(spec)
    if mixture.n != spec.n or Q.n != spec.n:
        raise DomainError("mixture, count profile, and spec must share the same n")
    ubar, c = spec.ubar, spec.c
    q = first_success_probabilities(Q.Q)
    total = q.sum()
    k = np.arange(1, spec.n + 1)
    value = 0.0
    for m in range(spec.n + 1):
        early = q[:m] @ ((k[:m] - 1) * c) if m else 0.0
        late = q[m:].sum() * (ubar - c + m * c)
        value += mixture.w[m] * (early + late + (1.0 - total) * m * c)
    return float(value)
