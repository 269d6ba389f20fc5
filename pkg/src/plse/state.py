"""Incremental solution representation with O(n) insert/remove.

The state keeps a permutation of all nodes split into three sections
(solution, free, non-free), the inverse position index, per-node tightness
and solution-neighbor slots, per-solution-node counts of 1-tight neighbors
along each grid line, and the step at which each node last left the
solution (for the soft-tabu kick).
"""

from __future__ import annotations

import numpy as np

from . import _kernels as K
from .mis import MisInstance


class SolutionState:
    """Mutable solution over an immutable MisInstance.

    Use insert/remove for single nodes and the neighborhood searches for
    improving exchanges; every operation keeps all counters consistent.
    """

    def __init__(self, mis: MisInstance):
        self.mis = mis
        self.n = mis.n
        n3 = mis.n3
        self.member = mis.member
        self.perm = mis.node_ids.copy()
        self.pos = np.full(n3, -1, dtype=np.int32)
        self.pos[self.perm] = np.arange(self.perm.shape[0], dtype=np.int32)
        self.tau = np.zeros(n3, dtype=np.int32)
        self.nbrs = np.full(3 * n3, -1, dtype=np.int32)
        self.mu = np.zeros(3 * n3, dtype=np.int32)
        self.last_out = np.zeros(n3, dtype=np.int64)
        self.meta = np.array([0, self.perm.shape[0], 0], dtype=np.int64)

    # --- counters --------------------------------------------------------
    @property
    def sol_count(self) -> int:
        return int(self.meta[0])

    @property
    def free_count(self) -> int:
        return int(self.meta[1])

    @property
    def step(self) -> int:
        return int(self.meta[2])

    def is_maximal(self) -> bool:
        return self.meta[1] == 0

    # --- section views -----------------------------------------------------
    def solution_ids(self) -> list[int]:
        return [int(v) for v in self.perm[: self.sol_count]]

    def free_ids(self) -> list[int]:
        return [int(v) for v in self.perm[self.sol_count : self.sol_count + self.free_count]]

    def nonfree_ids(self) -> list[int]:
        return [int(v) for v in self.perm[self.sol_count + self.free_count :]]

    def solution_triples(self) -> set:
        return {self.mis.triple_of(v) for v in self.solution_ids()}

    def in_solution(self, v: int) -> bool:
        return self.pos[v] >= 0 and self.pos[v] < self.meta[0]

    def solution_neighbors(self, v: int) -> list[int]:
        """The tau(v) solution neighbors of a non-solution node."""
        t = int(self.tau[v])
        return [int(self.nbrs[3 * v + i]) for i in range(t)]

    def nu(self, x: int) -> int:
        """Number of directions whose grid line through x holds a 1-tight node."""
        if not self.in_solution(x):
            raise ValueError(f"id {x} is not a solution node")
        b = 3 * x
        m = self.mu
        return int(m[b] > 0) + int(m[b + 1] > 0) + int(m[b + 2] > 0)

    # --- mutation ----------------------------------------------------------
    def _args(self):
        return (
            self.perm,
            self.pos,
            self.tau,
            self.nbrs,
            self.mu,
            self.last_out,
            self.meta,
            self.member,
            self.n,
        )

    def insert(self, x: int) -> None:
        p = self.pos[x] if 0 <= x < self.mis.n3 else -1
        if p < 0:
            raise ValueError(f"id {x} is not a node of this instance")
        if p < self.meta[0] or p >= self.meta[0] + self.meta[1]:
            raise ValueError(f"insert requires a free node; id {x} is not free")
        K.insert_node(*self._args(), x)

    def remove(self, x: int) -> None:
        p = self.pos[x] if 0 <= x < self.mis.n3 else -1
        if p < 0 or p >= self.meta[0]:
            raise ValueError(f"remove requires a solution node; id {x} is not in the solution")
        K.remove_node(*self._args(), x)

    # --- bulk operations ----------------------------------------------------
    def snapshot(self) -> frozenset[int]:
        return frozenset(self.solution_ids())

    def restore(self, target: frozenset[int] | set[int]) -> None:
        """Reshape the solution into `target` by removing/inserting the difference."""
        current = self.snapshot()
        for x in sorted(current - set(target)):
            self.remove(x)
        for x in sorted(set(target) - current):
            self.insert(x)

    def copy(self) -> "SolutionState":
        dup = object.__new__(SolutionState)
        dup.mis = self.mis
        dup.n = self.n
        dup.member = self.member
        dup.perm = self.perm.copy()
        dup.pos = self.pos.copy()
        dup.tau = self.tau.copy()
        dup.nbrs = self.nbrs.copy()
        dup.mu = self.mu.copy()
        dup.last_out = self.last_out.copy()
        dup.meta = self.meta.copy()
        return dup

    # --- comparison ----------------------------------------------------------
    def canonical(self) -> tuple:
        """History-independent view of the state (section order and
        neighbor-slot order are arbitrary; last_out is excluded)."""
        sol = frozenset(self.solution_ids())
        free = frozenset(self.free_ids())
        nonfree = frozenset(self.nonfree_ids())
        tau = tuple(int(self.tau[v]) for v in sorted(free | nonfree))
        nbr_sets = tuple(
            frozenset(self.solution_neighbors(v)) for v in sorted(free | nonfree)
        )
        mu = tuple(
            (int(self.mu[3 * x]), int(self.mu[3 * x + 1]), int(self.mu[3 * x + 2]))
            for x in sorted(sol)
        )
        return (self.n, sol, free, nonfree, tau, nbr_sets, mu)


def states_equivalent(a: SolutionState, b: SolutionState) -> bool:
    """Field-for-field equality up to permutation order (last_out excluded)."""
    return a.canonical() == b.canonical()


def rebuild_from_scratch(mis: MisInstance, solution) -> SolutionState:
    """Recompute every state field naively from the definitions.

    Independent of the incremental operations; used as the consistency
    oracle.  Raises ValueError when `solution` is not an independent set of
    nodes.
    """
    n = mis.n
    ids = sorted({int(v) for v in solution})
    for v in ids:
        if not mis.contains(v):
            raise ValueError(f"id {v} is not a node of this instance")

    sol3 = np.zeros((n, n, n), dtype=bool)
    flat = sol3.reshape(-1)
    flat[ids] = True
    has = [sol3.any(axis=ax) for ax in (0, 1, 2)]
    per_line = [sol3.sum(axis=ax) for ax in (0, 1, 2)]
    if any(int(p.max(initial=0)) > 1 for p in per_line):
        raise ValueError("solution is not an independent set")

    member3 = mis.member.reshape(n, n, n).astype(bool)
    nonsol = member3 & ~sol3
    tau3 = (
        has[0][None, :, :].astype(np.int32)
        + has[1][:, None, :].astype(np.int32)
        + has[2][:, :, None].astype(np.int32)
    )
    tau3[~nonsol] = 0

    # the unique solution node on each grid line (or -1)
    arg = [sol3.argmax(axis=ax) for ax in (0, 1, 2)]
    n2 = n * n
    state = object.__new__(SolutionState)
    state.mis = mis
    state.n = n
    state.member = mis.member
    n3 = mis.n3
    state.tau = tau3.reshape(-1).astype(np.int32)
    state.nbrs = np.full(3 * n3, -1, dtype=np.int32)
    state.mu = np.zeros(3 * n3, dtype=np.int32)
    state.last_out = np.zeros(n3, dtype=np.int64)

    tight = np.flatnonzero((state.tau > 0) & (mis.member > 0))
    for v in tight:
        r, c, s = v // n2, (v // n) % n, v % n
        k = 0
        if has[0][c, s]:
            state.nbrs[3 * v + k] = arg[0][c, s] * n2 + c * n + s
            k += 1
        if has[1][r, s]:
            state.nbrs[3 * v + k] = r * n2 + arg[1][r, s] * n + s
            k += 1
        if has[2][r, c]:
            state.nbrs[3 * v + k] = r * n2 + c * n + arg[2][r, c]
            k += 1

    one3 = nonsol & (tau3 == 1)
    ones = [one3.sum(axis=ax) for ax in (0, 1, 2)]
    for v in ids:
        r, c, s = v // n2, (v // n) % n, v % n
        state.mu[3 * v] = ones[0][c, s]
        state.mu[3 * v + 1] = ones[1][r, s]
        state.mu[3 * v + 2] = ones[2][r, c]

    free = np.flatnonzero(nonsol.reshape(-1) & (state.tau == 0)).astype(np.int32)
    nonfree = np.flatnonzero(nonsol.reshape(-1) & (state.tau > 0)).astype(np.int32)
    state.perm = np.concatenate(
        [np.asarray(ids, dtype=np.int32), free, nonfree]
    )
    state.pos = np.full(n3, -1, dtype=np.int32)
    state.pos[state.perm] = np.arange(state.perm.shape[0], dtype=np.int32)
    state.meta = np.array([len(ids), free.shape[0], 0], dtype=np.int64)
    return state
