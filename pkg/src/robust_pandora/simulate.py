"""Monte-Carlo simulation of the search process under a known truth.

The closed forms price policies against worst cases; this module instead
runs the process forward under an explicit data-generating belief and
estimates the expected number of opened boxes and the realized ex-post
regret, with standard errors.

Reproducibility contract: all randomness comes from a Philox-4x64 counter
stream keyed by ``seed``.  With ``d`` the smallest multiple of 4 at or above
``2 (n + 1)`` (counter blocks hold four 64-bit words), episode ``e`` owns
the ``d`` float64 draws starting at word offset ``e * d``; each float64 is
one word, ``word >> 11`` scaled by ``2**-53``.  Within a block, draws are
spent in a fixed order: one state column for the existence or count draw,
one per box, then one decision column per stage (heterogeneous stage draws
select by cumulative weight over boxes in ascending input order, with the
outside option last); the tail padding is never read.  Results are
therefore bit-identical for a given ``(policy, truth, spec, episodes,
seed)`` no matter how the work is chunked or threaded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CountProfile,
    DomainError,
    HeteroPVector,
    HomogeneousSpec,
    IidBinary,
    NeedleP,
    SeedError,
    StationaryPolicy,
    validate_spec,
)
from .het import HeterogeneousSpec, SelectionPolicy

__all__ = ["SimulationResult", "simulate", "MAX_EPISODES"]

MAX_EPISODES = 1 << 40

# constant so that summation grouping, and hence output bytes, never depend
# on caller-visible knobs
_CHUNK = 1 << 16


@dataclass(frozen=True)
class SimulationResult:
    episodes: int
    mean_opened: float
    se_opened: float
    mean_regret: float
    se_regret: float
    seed: int


def _draws_per_episode(n: int) -> int:
    need = 2 * (n + 1)
    return -(-need // 4) * 4


def _uniform_block(seed: int, start_episode: int, rows: int, draws_per_episode: int) -> np.ndarray:
    # Philox.advance counts 256-bit counter blocks, i.e. four 64-bit draws
    bg = np.random.Philox(key=seed)
    bg.advance(start_episode * draws_per_episode // 4)
    return np.random.Generator(bg).random((rows, draws_per_episode))


def _homogeneous_chunks(policy: StationaryPolicy, truth, spec: HomogeneousSpec, episodes: int, seed: int):
    """Yield (opened, regret) arrays per chunk for a homogeneous simulation."""
    n, ubar, c = spec.n, spec.ubar, spec.c
    draws = _draws_per_episode(n)
    alphas_by_stage = policy.alphas[::-1].copy()  # stage j opens box j+1, k = n - j remain

    if isinstance(truth, CountProfile):
        if truth.n != n:
            raise DomainError("count profile length must match the spec")
        cum = np.cumsum(truth.Q)

    start = 0
    while start < episodes:
        rows = min(_CHUNK, episodes - start)
        U = _uniform_block(seed, start, rows, draws)
        state = U[:, : n + 1]
        dec = U[:, n + 1 : 2 * n + 1]

        if isinstance(truth, IidBinary):
            hits = state[:, 1:] < truth.p
            any_treasure = hits.any(axis=1)
            first = np.where(any_treasure, hits.argmax(axis=1) + 1, n + 1)
        elif isinstance(truth, NeedleP):
            any_treasure = state[:, 0] < truth.P
            pos = np.minimum((state[:, 1] * n).astype(np.int64), n - 1)
            first = np.where(any_treasure, pos + 1, n + 1)
        elif isinstance(truth, CountProfile):
            count = np.searchsorted(cum, state[:, 0], side="right")
            count = np.minimum(count, n)
            any_treasure = count > 0
            remaining = count.astype(np.float64)
            first = np.full(rows, n + 1, dtype=np.int64)
            undecided = np.full(rows, True)
            for i in range(n):
                take = undecided & (state[:, 1 + i] * (n - i) < remaining)
                first[take] = i + 1
                undecided &= ~take
                remaining = remaining - take
            first = np.where(any_treasure, first, n + 1)
        else:
            raise DomainError(f"homogeneous simulation cannot use truth {type(truth).__name__}")

        cont = dec < alphas_by_stage
        all_cont = cont.all(axis=1)
        willing = np.where(all_cont, n, cont.argmin(axis=1))

        found = first <= willing
        opened = np.where(found, first, willing)
        payoff = np.where(found, ubar - first * c, -willing * c)
        oracle = np.where(any_treasure, ubar - c, 0.0)
        yield opened.astype(np.float64), oracle - payoff
        start += rows


def _heterogeneous_chunks(policy: SelectionPolicy, truth: HeteroPVector, spec: HeterogeneousSpec, episodes: int, seed: int):
    n = spec.n
    if len(truth.p) != n:
        raise DomainError("truth needs one probability per box")
    draws = _draws_per_episode(n)
    probs = np.asarray(truth.p)
    deltas = spec.deltas
    full = spec.full_set()

    start = 0
    while start < episodes:
        rows = min(_CHUNK, episodes - start)
        U = _uniform_block(seed, start, rows, draws)
        opened = np.zeros(rows)
        regret = np.zeros(rows)
        for e in range(rows):
            hits = U[e, 1 : n + 1] < probs
            oracle = max([0.0] + [deltas[i] for i in range(n) if hits[i]])
            subset = full
            cost = 0.0
            payoff = 0.0
            steps = 0
            for t in range(n):
                rule = policy.rule_for(subset)
                members = sorted(subset)
                draw = U[e, n + 1 + t]
                acc = 0.0
                chosen = None  # outside option unless a box interval matches
                for i in members:
                    acc += rule.open_probs[i]
                    if draw < acc:
                        chosen = i
                        break
                if chosen is None:
                    payoff = -cost
                    break
                cost += spec.boxes[chosen][1]
                steps += 1
                if hits[chosen]:
                    payoff = spec.boxes[chosen][0] - cost
                    break
                subset = subset - {chosen}
                payoff = -cost
            opened[e] = steps
            regret[e] = oracle - payoff
        yield opened, regret
        start += rows


def simulate(policy, truth, spec, episodes: int, seed: int) -> SimulationResult:
    """Estimate opened-box count and realized regret under a known truth.

    Homogeneous specs take a :class:`StationaryPolicy` and an
    :class:`IidBinary`, :class:`NeedleP`, or :class:`CountProfile` truth;
    heterogeneous specs take a :class:`SelectionPolicy` and a
    :class:`HeteroPVector`.  Episodes are independent; the DM stops on the
    first high reward.
    """
    if episodes < 1:
        raise DomainError("need at least one episode")
    if episodes > MAX_EPISODES:
        raise SeedError(f"episode count {episodes} exceeds the substream space ({MAX_EPISODES})")
    if not 0 <= int(seed) < 2**64:
        raise SeedError("seed must fit in 64 bits")

    if isinstance(spec, HomogeneousSpec):
        validate_spec(spec)
        if not isinstance(policy, StationaryPolicy) or policy.n != spec.n:
            raise DomainError("homogeneous simulation needs a StationaryPolicy of matching length")
        chunks = _homogeneous_chunks(policy, truth, spec, episodes, seed)
    elif isinstance(spec, HeterogeneousSpec):
        if not isinstance(policy, SelectionPolicy):
            raise DomainError("heterogeneous simulation needs a SelectionPolicy")
        if not isinstance(truth, HeteroPVector):
            raise DomainError("heterogeneous simulation needs a HeteroPVector truth")
        chunks = _heterogeneous_chunks(policy, truth, spec, episodes, seed)
    else:
        raise DomainError(f"unsupported spec type {type(spec).__name__}")

    sums_o, sums_o2, sums_r, sums_r2 = [], [], [], []
    for opened, regret in chunks:
        sums_o.append(float(np.sum(opened)))
        sums_o2.append(float(np.sum(opened * opened)))
        sums_r.append(float(np.sum(regret)))
        sums_r2.append(float(np.sum(regret * regret)))

    total_o = math.fsum(sums_o)
    total_o2 = math.fsum(sums_o2)
    total_r = math.fsum(sums_r)
    total_r2 = math.fsum(sums_r2)
    mean_o = total_o / episodes
    mean_r = total_r / episodes

    def se(total_sq, mean):
        if episodes < 2:
            return 0.0
        var = max(total_sq - episodes * mean * mean, 0.0) / (episodes - 1)
        return math.sqrt(var / episodes)

    return SimulationResult(
        episodes=episodes,
        mean_opened=mean_o,
        se_opened=se(total_o2, mean_o),
        mean_regret=mean_r,
        se_regret=se(total_r2, mean_r),
        seed=int(seed),
    )
