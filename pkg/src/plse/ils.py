"""Iterated local search: greedy construction, soft-tabu kick, time-limited loop."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .core import Triple
from .mis import MisInstance
from .neighborhoods import LsLevel, _rng_state, local_search
from .state import SolutionState


@dataclass(frozen=True)
class IlsConfig:
    level: LsLevel = LsLevel.TR
    time_limit: float = 30.0
    seed: int = 0
    kick_cap: int | None = None  # default: number of non-solution nodes
    greedy_lookahead: bool = True

    def __post_init__(self):
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass
class IlsStats:
    initial_size: int
    best_size: int
    iterations: int
    first_ls_improvement: int
    series: list[tuple[float, int]] = field(default_factory=list)  # (ms, best)
    ls_time_ms_total: float = 0.0
    elapsed_ms: float = 0.0

    @property
    def ls_time_ms_mean(self) -> float:
        return self.ls_time_ms_total / self.iterations if self.iterations else 0.0

    @property
    def improvement(self) -> int:
        return self.best_size - self.initial_size


_BIG = 1 << 20


def greedy_init(mis: MisInstance, rng: random.Random, lookahead: bool = True) -> SolutionState:
    """Min-residual-degree greedy construction with one-step look-ahead.

    Repeatedly inserts a free node with the fewest free neighbors; with
    lookahead, ties prefer the candidate whose free neighbors have the
    smallest residual-degree sum; remaining ties are uniform random.  The
    result is maximal.
    """
    state = SolutionState(mis)
    n = mis.n
    if mis.node_count == 0:
        return state
    free = mis.member.reshape(n, n, n).astype(bool)
    fdeg = (
        free.sum(axis=0, dtype=np.int32)[None, :, :]
        + free.sum(axis=1, dtype=np.int32)[:, None, :]
        + free.sum(axis=2, dtype=np.int32)[:, :, None]
        - 3
    )

    order: list[int] = []
    while free.any():
        masked = np.where(free, fdeg, _BIG)
        m = int(masked.min())
        ties = np.flatnonzero(masked.reshape(-1) == m)
        if ties.shape[0] == 1:
            v = int(ties[0])
        elif lookahead:
            best_score = None
            best_ids: list[int] = []
            for cand in ties:
                cand = int(cand)
                r, rem = divmod(cand, n * n)
                c, s = divmod(rem, n)
                score = (
                    int((fdeg[:, c, s] * free[:, c, s]).sum())
                    + int((fdeg[r, :, s] * free[r, :, s]).sum())
                    + int((fdeg[r, c, :] * free[r, c, :]).sum())
                    - 3 * int(fdeg[r, c, s])
                )
                if best_score is None or score < best_score:
                    best_score = score
                    best_ids = [cand]
                elif score == best_score:
                    best_ids.append(cand)
            v = best_ids[0] if len(best_ids) == 1 else best_ids[rng.randrange(len(best_ids))]
        else:
            v = int(ties[rng.randrange(ties.shape[0])])
        order.append(v)

        r, rem = divmod(v, n * n)
        c, s = divmod(rem, n)
        ax0 = np.nonzero(free[:, c, s])[0]
        ax1 = np.nonzero(free[r, :, s])[0]
        ax2 = np.nonzero(free[r, c, :])[0]
        free[:, c, s] = False
        free[r, :, s] = False
        free[r, c, :] = False
        for wr in ax0:
            _leave(fdeg, int(wr), c, s)
        for wc in ax1:
            if wc != c:
                _leave(fdeg, r, int(wc), s)
        for ws in ax2:
            if ws != s:
                _leave(fdeg, r, c, int(ws))

    for v in order:
        state.insert(v)
    return state


def _leave(fdeg, r, c, s):
    fdeg[:, c, s] -= 1
    fdeg[r, :, s] -= 1
    fdeg[r, c, :] -= 1


def _force_insert(state: SolutionState, u: int) -> None:
    for x in state.solution_neighbors(u):
        state.remove(x)
    state.insert(u)


def kick(
    state: SolutionState,
    best: frozenset[int] | set[int],
    rng: random.Random,
    kick_cap: int | None = None,
) -> bool:
    """Perturb a copy of the incumbent by k forced insertions.

    k is geometric (P(k) = 2^-k, capped).  The first forced node is the
    soft-tabu pick: among neighbors of solution nodes owning a 1-tight
    neighbor (all non-solution nodes when there is no such owner), the one
    longest outside the solution.  The rest are uniform over non-solution
    nodes.  Ends with randomized maximalization.  Returns False when the
    instance has no non-solution node left (nothing to perturb).
    """
    state.restore(best)
    total = state.perm.shape[0]
    if total - state.sol_count == 0:
        return False
    k = 1
    while rng.random() < 0.5:
        k += 1
    cap = kick_cap if kick_cap is not None else total - state.sol_count
    k = min(k, cap)
    rs = _rng_state(rng)
    first = int(K.kick_first_candidate(*state._args(), rs))
    if first < 0:
        return False
    _force_insert(state, first)
    for _ in range(k - 1):
        nonsol = total - state.sol_count
        if nonsol == 0:
            break
        u = int(state.perm[state.sol_count + rng.randrange(nonsol)])
        _force_insert(state, u)
    K.maximalize(*state._args(), rs)
    return True


def sample_kick_size(rng: random.Random, cap: int | None = None) -> int:
    """Draw k with P(k = kappa) = 2^-kappa via fair coin flips."""
    k = 1
    while rng.random() < 0.5:
        k += 1
    return min(k, cap) if cap is not None else k


def run(mis: MisInstance, config: IlsConfig) -> tuple[set[Triple], IlsStats]:
    """Greedy init, then (local search, accept if not worse, kick) until the
    time limit; returns the best-ever extension as triples plus statistics."""
    t0 = time.perf_counter()
    rng = random.Random(config.seed)
    state = greedy_init(mis, rng, config.greedy_lookahead)
    init_size = state.sol_count
    best = state.snapshot()
    best_size = init_size
    target = mis.n * mis.n - len(mis.instance.triples)
    stats = IlsStats(init_size, init_size, 0, 0)
    stats.series.append(((time.perf_counter() - t0) * 1000.0, init_size))

    while time.perf_counter() - t0 < config.time_limit:
        t_ls = time.perf_counter()
        local_search(state, config.level, rng, fast=True)
        now = time.perf_counter()
        stats.ls_time_ms_total += (now - t_ls) * 1000.0
        stats.iterations += 1
        if stats.iterations == 1:
            stats.first_ls_improvement = state.sol_count - init_size
        if state.sol_count >= best_size:
            if state.sol_count > best_size:
                stats.series.append(((now - t0) * 1000.0, state.sol_count))
            best_size = state.sol_count
            best = state.snapshot()
        if best_size >= target:
            break  # complete square: provably optimal
        if not kick(state, best, rng, config.kick_cap):
            break
    stats.best_size = best_size
    stats.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    triples = {mis.triple_of(v) for v in best}
    return triples, stats
