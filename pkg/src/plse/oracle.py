"""Brute-force references for tests and acceptance runs.

Everything here recomputes from first principles (triples and Hamming
distances) instead of trusting the incremental bookkeeping, so these
functions can serve as independent oracles for the fast searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import PlsError, hamming_distance
from .matching import BipartiteGraph
from .mis import MisInstance
from .neighborhoods import Move
from .state import SolutionState


class BudgetError(PlsError):
    """Input too large for exhaustive search."""


@dataclass(frozen=True)
class OracleBudget:
    max_nodes: int = 30
    max_n: int = 5


DEFAULT_BUDGET = OracleBudget()


def _mis_exact(triples: list, ids: list[int]) -> tuple[int, list[int]]:
    """Exact MIS over an explicit node list via branch and bound.

    Adjacency is Hamming distance 1 on triples.  Greedy start for the lower
    bound; grid-line cliques give the cover-based upper bound.
    """
    k = len(ids)
    if k == 0:
        return 0, []
    adj = [0] * k
    line_mask = [[0, 0, 0] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if hamming_distance(triples[i], triples[j]) == 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
                if triples[i][0] != triples[j][0]:
                    ax = 0
                elif triples[i][1] != triples[j][1]:
                    ax = 1
                else:
                    ax = 2
                line_mask[i][ax] |= 1 << j
                line_mask[j][ax] |= 1 << i

    full = (1 << k) - 1

    # greedy lower bound: repeatedly take a minimum-degree available node
    best_set = 0
    avail = full
    while avail:
        chosen, chosen_deg = -1, k + 1
        m = avail
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            deg = bin(adj[i] & avail).count("1")
            if deg < chosen_deg:
                chosen, chosen_deg = i, deg
        best_set |= 1 << chosen
        avail &= ~(adj[chosen] | (1 << chosen))
    best_size = bin(best_set).count("1")

    def cover_bound(avail: int) -> int:
        count = 0
        m = avail
        while m:
            i = (m & -m).bit_length() - 1
            clique = 1 << i
            take = 0
            for ax in range(3):
                cand = line_mask[i][ax] & m
                if bin(cand).count("1") > bin(take).count("1"):
                    take = cand
            m &= ~(clique | take)
            count += 1
        return count

    state = [best_size, best_set]

    def bb(avail: int, cur_set: int, cur: int) -> None:
        if avail == 0:
            if cur > state[0]:
                state[0] = cur
                state[1] = cur_set
            return
        if cur + cover_bound(avail) <= state[0]:
            return
        i = (avail & -avail).bit_length() - 1
        bb(avail & ~(adj[i] | (1 << i)), cur_set | (1 << i), cur + 1)
        bb(avail & ~(1 << i), cur_set, cur)

    bb(full, 0, 0)
    size, chosen_mask = state
    chosen = [ids[i] for i in range(k) if chosen_mask & (1 << i)]
    return size, chosen


def brute_force_mis(
    mis: MisInstance, budget: OracleBudget = DEFAULT_BUDGET
) -> tuple[int, list[int]]:
    """Exact maximum independent set of the whole instance (size, witness ids)."""
    if mis.node_count > budget.max_nodes:
        raise BudgetError(
            f"{mis.node_count} nodes exceed the exhaustive budget of {budget.max_nodes}"
        )
    ids = [int(v) for v in mis.node_ids]
    triples = [mis.triple_of(v) for v in ids]
    return _mis_exact(triples, ids)


def _solution_neighbor_masks(state: SolutionState) -> tuple[list[int], dict[int, int]]:
    """For every non-solution node, the bitmask of its solution neighbors
    (bit positions index the sorted solution list).  Recomputed from the
    geometry, independent of the incremental counters."""
    mis = state.mis
    sol = sorted(state.solution_ids())
    sol_index = {x: i for i, x in enumerate(sol)}
    masks: dict[int, int] = {}
    solset = set(sol)
    for v in mis.node_ids:
        v = int(v)
        if v in solset:
            continue
        m = 0
        for w in mis.neighbors(v):
            if w in sol_index:
                m |= 1 << sol_index[w]
        masks[v] = m
    return sol, masks


def naive_swap_search(
    state: SolutionState, p: int, budget: OracleBudget = DEFAULT_BUDGET
) -> Move | None:
    """Definitional (p, n^2)-swap search: for every p-subset R of the
    solution, brute-force the MIS among nodes freed by removing R (the
    members of R included) and report the first strict improvement."""
    if p not in (1, 2, 3):
        raise ValueError("p must be 1, 2 or 3")
    mis = state.mis
    if mis.n > budget.max_n:
        raise BudgetError(f"n={mis.n} exceeds the exhaustive budget of n<={budget.max_n}")
    sol, masks = _solution_neighbor_masks(state)
    nonsol = sorted(masks)
    for subset in combinations(range(len(sol)), p):
        rmask = 0
        for i in subset:
            rmask |= 1 << i
        freed = [v for v in nonsol if masks[v] & ~rmask == 0]
        freed.extend(sol[i] for i in subset)
        if len(freed) <= p:
            continue
        if len(freed) > budget.max_nodes:
            raise BudgetError(
                f"{len(freed)} freed nodes exceed the exhaustive budget"
            )
        size, chosen = _mis_exact([mis.triple_of(v) for v in freed], freed)
        if size > p:
            return Move(tuple(sol[i] for i in subset), tuple(chosen))
    return None


def naive_trellis_search(
    state: SolutionState, budget: OracleBudget = DEFAULT_BUDGET
) -> Move | None:
    """Definitional Trellis search: per facet, brute-force the MIS of the
    subgraph induced by R plus the 1-tight and 2-tight nodes whose solution
    neighbors all lie in R."""
    mis = state.mis
    if mis.n > budget.max_n:
        raise BudgetError(f"n={mis.n} exceeds the exhaustive budget of n<={budget.max_n}")
    n = mis.n
    sol, masks = _solution_neighbor_masks(state)
    nonsol = sorted(masks)
    for d in range(3):
        for k in range(n):
            rmask = 0
            r_nodes = []
            for i, x in enumerate(sol):
                if _axis_coord(x, d, n) == k:
                    rmask |= 1 << i
                    r_nodes.append(x)
            if not r_nodes:
                continue
            trellis = list(r_nodes)
            for v in nonsol:
                m = masks[v]
                if m and m & ~rmask == 0:
                    trellis.append(v)
            if len(trellis) > budget.max_nodes:
                raise BudgetError(
                    f"{len(trellis)} trellis nodes exceed the exhaustive budget"
                )
            size, chosen = _mis_exact([mis.triple_of(v) for v in trellis], trellis)
            if size > len(r_nodes):
                return Move(tuple(r_nodes), tuple(chosen))
    return None


def _axis_coord(v: int, ax: int, n: int) -> int:
    if ax == 0:
        return v // (n * n)
    if ax == 1:
        return (v // n) % n
    return v % n


def reference_matching(g: BipartiteGraph) -> int:
    """Maximum matching size via plain augmenting paths (Kuhn)."""
    adj: list[list[int]] = [[] for _ in range(g.left_count)]
    for l, r, _pay in g.edges:
        adj[l].append(r)
    match_r = [-1] * g.right_count

    def try_augment(l: int, seen: set[int]) -> bool:
        for r in adj[l]:
            if r in seen:
                continue
            seen.add(r)
            if match_r[r] == -1 or try_augment(match_r[r], seen):
                match_r[r] = l
                return True
        return False

    size = 0
    for l in range(g.left_count):
        if adj[l] and try_augment(l, set()):
            size += 1
    return size
