"""Robust search with box-specific rewards and inspection costs.

Heterogeneity breaks the symmetry that let the homogeneous solvers work
with a single search probability.  The DM now randomizes over which box to
open (or quitting) at every remaining subset, and the weights follow a
system of pseudo-indices: menu-dependent coefficients, one per box, whose
normalization gives the opening probabilities.  Unlike classic reservation
values these indices depend on the whole remaining menu, because opening a
box risks forgoing the others.

The candidate worst case puts each box at its indifference probability
``p_hat_i = c_i / ubar_i``, where the DM is indifferent across all plans;
the solution value for a menu ``N`` is

    R_N = sum_{i in N} p_hat_i Delta_i prod_{j above i} (1 - p_hat_j),

with ``Delta_i = ubar_i - c_i`` and "above" meaning later in the ascending
net-reward order.  The selection weights kill the adversary's first-order
gain from moving any one belief, and the regret is multilinear in the
beliefs, so every single-belief direction through that point is exactly
flat.  All subset tables are built bottom-up and are read-only afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional

import numpy as np

from .core import DomainError, SizeError, as_probability

__all__ = [
    "MAX_BOXES",
    "HeterogeneousSpec",
    "SubsetRule",
    "SelectionPolicy",
    "HetSolution",
    "psi",
    "solve_het",
    "regret_het",
    "cost_asymmetry_sweep",
]

# Subset recursions are exponential; refuse instances past this size.
MAX_BOXES = 20


@dataclass(frozen=True)
class HeterogeneousSpec:
    """Boxes with individual high rewards and search costs.

    Boxes keep their input indices (0-based) everywhere in the public API;
    the ascending net-reward order used internally is exposed as ``order``.
    The outside option plays the role of a free, always-successful box with
    net reward zero.
    """

    boxes: tuple  # ((ubar_i, c_i), ...)

    def __post_init__(self):
        boxes = tuple((float(u), float(c)) for u, c in self.boxes)
        if not boxes:
            raise DomainError("need at least one box")
        for i, (u, c) in enumerate(boxes):
            if not np.isfinite(u) or u <= 0.0:
                raise DomainError(f"box {i}: high reward must be positive, got {u!r}")
            if not np.isfinite(c) or c <= 0.0 or c >= u:
                raise DomainError(f"box {i}: search cost must lie in (0, {u}), got {c!r}")
        object.__setattr__(self, "boxes", boxes)
        deltas = tuple(u - c for u, c in boxes)
        object.__setattr__(self, "_deltas", deltas)
        order = tuple(int(i) for i in np.argsort(np.asarray(deltas), kind="stable"))
        object.__setattr__(self, "_order", order)

    @property
    def n(self) -> int:
        return len(self.boxes)

    @property
    def deltas(self) -> tuple:
        return self._deltas

    @property
    def p_hats(self) -> tuple:
        return tuple(c / u for u, c in self.boxes)

    @property
    def order(self) -> tuple:
        """Original indices sorted by ascending net reward (stable on ties)."""
        return self._order

    def full_set(self) -> frozenset:
        return frozenset(range(self.n))


@dataclass(frozen=True)
class SubsetRule:
    """Opening probabilities for one remaining menu, plus the quit weight."""

    open_probs: dict  # original box index -> probability
    optout: float

    def __post_init__(self):
        probs = {int(i): as_probability(w, f"open weight of box {i}") for i, w in self.open_probs.items()}
        out = as_probability(self.optout, "opt-out weight")
        if abs(sum(probs.values()) + out - 1.0) > 1e-9:
            raise DomainError("subset rule weights must sum to 1")
        object.__setattr__(self, "open_probs", probs)
        object.__setattr__(self, "optout", out)

    @property
    def total_search(self) -> float:
        return 1.0 - self.optout


class SelectionPolicy:
    """A subset rule for every menu the search process can reach."""

    def __init__(self, n: int, rules: Dict[FrozenSet[int], SubsetRule]):
        self.n = int(n)
        self._rules = dict(rules)

    def rule_for(self, subset: Iterable[int]) -> SubsetRule:
        key = frozenset(int(i) for i in subset)
        try:
            return self._rules[key]
        except KeyError:
            raise DomainError(f"policy has no rule for subset {sorted(key)}") from None

    def subsets(self):
        return self._rules.keys()

    @classmethod
    def always_opt_out(cls, n: int) -> "SelectionPolicy":
        rules = {}
        for mask in range(1, 1 << n):
            members = frozenset(i for i in range(n) if mask >> i & 1)
            rules[members] = SubsetRule({i: 0.0 for i in members}, 1.0)
        return cls(n, rules)


def _check_size(n: int):
    if n > MAX_BOXES:
        raise SizeError(f"subset recursion limited to {MAX_BOXES} boxes, got {n}")


def _sorted_members(spec: HeterogeneousSpec, subset: frozenset) -> list:
    return [i for i in spec.order if i in subset]


def psi(k: int, subset: Iterable[int], spec: HeterogeneousSpec) -> float:
    """Probability that every box ranked above ``k`` in the menu comes up empty.

    Evaluated at the indifference beliefs: the product of ``1 - p_hat_j``
    over menu members strictly later than ``k`` in the net-reward order.
    The top-ranked member gets the empty product, 1.
    """
    members = frozenset(int(i) for i in subset)
    if k not in members:
        raise DomainError(f"box {k} is not in the subset")
    p_hats = spec.p_hats
    ordered = _sorted_members(spec, members)
    pos = ordered.index(k)
    out = 1.0
    for j in ordered[pos + 1 :]:
        out *= 1.0 - p_hats[j]
    return out


@dataclass(frozen=True)
class HetSolution:
    """Selection weights, guaranteed regrets, and solver internals per menu."""

    spec: HeterogeneousSpec
    policy: SelectionPolicy
    regret_per_subset: dict  # frozenset -> float
    gammas: dict  # frozenset -> {original index: gamma}
    psi_cache: dict  # frozenset -> {original index: psi}

    def _key(self, subset: Optional[Iterable[int]]) -> frozenset:
        if subset is None:
            return self.spec.full_set()
        return frozenset(int(i) for i in subset)

    def regret(self, subset: Optional[Iterable[int]] = None) -> float:
        return self.regret_per_subset[self._key(subset)]

    def rule_for(self, subset: Optional[Iterable[int]] = None) -> SubsetRule:
        return self.policy.rule_for(self._key(subset))

    def gamma(self, i: int, subset: Optional[Iterable[int]] = None) -> float:
        return self.gammas[self._key(subset)][int(i)]


def solve_het(spec: HeterogeneousSpec) -> HetSolution:
    """Minimax-regret selection weights for every menu of a heterogeneous spec.

    Builds the subset lattice bottom-up.  For each menu the pseudo-indices
    solve the linear system that kills Nature's incentive to move any single
    ``p_i`` away from its indifference value; their closed form is the
    recursion

        gamma_i = (B_0i + sum_{l below i} gamma_l B_li) / C_i,

    after which the weights are ``a(i) = gamma_i / (1 + sum gamma)`` and the
    quit weight is the same normalization applied to 1.  Every weight is
    strictly interior.
    """
    _check_size(spec.n)
    n = spec.n
    deltas = spec.deltas
    p_hats = spec.p_hats
    costs = tuple(c for _, c in spec.boxes)
    order = spec.order

    regret_star: Dict[int, float] = {0: 0.0}
    psi_by_mask: Dict[int, Dict[int, float]] = {0: {}}
    gammas_by_mask: Dict[int, Dict[int, float]] = {}
    rules: Dict[FrozenSet[int], SubsetRule] = {}

    # masks index positions in the sorted order; bit b set means box order[b]
    # is still unopened
    masks_by_size: Dict[int, list] = {s: [] for s in range(n + 1)}
    for mask in range(1 << n):
        masks_by_size[bin(mask).count("1")].append(mask)

    for size in range(1, n + 1):
        for mask in masks_by_size[size]:
            members = [b for b in range(n) if mask >> b & 1]  # ascending positions
            boxes_sorted = [order[b] for b in members]

            psis = {}
            tail = 1.0
            for b in reversed(members):
                psis[order[b]] = tail
                tail *= 1.0 - p_hats[order[b]]
            psi_by_mask[mask] = psis

            regret_star[mask] = sum(
                p_hats[i] * deltas[i] * psis[i] for i in boxes_sorted
            )

            gammas: Dict[int, float] = {}
            for t, b in enumerate(members):
                i = order[b]
                sub_mask = mask & ~(1 << b)
                psis_sub = psi_by_mask[sub_mask]
                above = [order[bb] for bb in members[t + 1 :]]
                c_i = (
                    costs[i]
                    + regret_star[sub_mask]
                    - sum(p_hats[k] * psis[k] * (deltas[k] - deltas[i]) for k in above)
                )
                # l = 0 is the outside option with p_hat 1 and net reward 0
                below = [order[bb] for bb in members[:t]]
                b0 = psis[i] * deltas[i] - sum(
                    p_hats[k] * psis_sub[k] * deltas[k] for k in below
                )
                numer = b0
                for s, l in enumerate(below):
                    between = below[s + 1 :]
                    b_li = p_hats[l] * (
                        psis[i] * (deltas[i] - deltas[l])
                        - sum(p_hats[k] * psis_sub[k] * (deltas[k] - deltas[l]) for k in between)
                    )
                    numer += gammas[l] * b_li
                gammas[i] = numer / c_i

            total = 1.0 + sum(gammas.values())
            key = frozenset(boxes_sorted)
            rules[key] = SubsetRule(
                {i: gammas[i] / total for i in boxes_sorted}, 1.0 / total
            )
            gammas_by_mask[mask] = gammas

    to_key = {
        mask: frozenset(order[b] for b in range(n) if mask >> b & 1)
        for mask in range(1 << n)
    }
    return HetSolution(
        spec=spec,
        policy=SelectionPolicy(n, rules),
        regret_per_subset={to_key[m]: r for m, r in regret_star.items() if m},
        gammas={to_key[m]: g for m, g in gammas_by_mask.items()},
        psi_cache={to_key[m]: p for m, p in psi_by_mask.items() if m},
    )


def regret_het(policy: SelectionPolicy, p, spec: HeterogeneousSpec) -> float:
    """Exact expected ex-post regret of a selection policy.

    ``p`` gives each box's success probability (a ``HeteroPVector`` or any
    sequence).  Opening a box hurts in two ways: stopping on a success
    forgoes any higher net reward that was also available, and a failure
    sinks the cost and passes to the shrunken menu.
    """
    _check_size(spec.n)
    probs = tuple(as_probability(x, "p_i") for x in (p.p if hasattr(p, "p") else p))
    if len(probs) != spec.n:
        raise DomainError(f"need one probability per box, got {len(probs)} for n={spec.n}")
    deltas = spec.deltas
    costs = tuple(c for _, c in spec.boxes)
    memo: Dict[frozenset, float] = {frozenset(): 0.0}

    def value(subset: frozenset) -> float:
        got = memo.get(subset)
        if got is not None:
            return got
        rule = policy.rule_for(subset)
        ordered = _sorted_members(spec, subset)
        m = len(ordered)
        # chance that box k is the best success among those ranked above it
        tail = np.empty(m + 1)
        tail[m] = 1.0
        for t in range(m - 1, -1, -1):
            tail[t] = tail[t + 1] * (1.0 - probs[ordered[t]])
        best = [probs[ordered[t]] * tail[t + 1] for t in range(m)]
        suffix_bd = np.zeros(m + 1)
        suffix_b = np.zeros(m + 1)
        for t in range(m - 1, -1, -1):
            suffix_bd[t] = suffix_bd[t + 1] + best[t] * deltas[ordered[t]]
            suffix_b[t] = suffix_b[t + 1] + best[t]
        total = rule.optout * suffix_bd[0]
        for t, i in enumerate(ordered):
            w = rule.open_probs.get(i, 0.0)
            if w == 0.0:
                continue
            missed = probs[i] * (suffix_bd[t + 1] - deltas[i] * suffix_b[t + 1])
            cont = (1.0 - probs[i]) * (costs[i] + value(subset - {i}))
            total += w * (missed + cont)
        memo[subset] = total
        return total

    return value(spec.full_set())


def cost_asymmetry_sweep(ubar: float, c_total: float, delta_grid) -> list:
    """Two equal-reward boxes: how cost asymmetry steers and stimulates search.

    Holds ``c_i + c_j = c_total`` fixed and varies ``delta = c_i - c_j``.
    Each row reports the opening probabilities of the costlier box ``i`` and
    the cheaper box ``j`` plus the total search probability ``1 - a(0)``.
    """
    if not 0.0 < c_total < 2.0 * ubar:
        raise DomainError(f"total cost must lie in (0, {2 * ubar}), got {c_total!r}")
    rows = []
    for d in np.asarray(delta_grid, dtype=float):
        ci = (c_total + d) / 2.0
        cj = (c_total - d) / 2.0
        if not (0.0 < ci < ubar and 0.0 < cj < ubar):
            raise DomainError(f"cost split {d!r} leaves a cost outside (0, {ubar})")
        sol = solve_het(HeterogeneousSpec(((ubar, ci), (ubar, cj))))
        rule = sol.rule_for()
        rows.append(
            {
                "delta": float(d),
                "open_costlier": rule.open_probs[0],
                "open_cheaper": rule.open_probs[1],
                "total_search": rule.total_search,
            }
        )
    return rows
