"""Neighborhood searches and the variable-depth local-search driver.

Four searches are provided, each returning the first improving exchange in
permutation scan order or None when the solution is locally optimal for
that neighborhood:

  search_swap1    remove 1 solution node, insert 2..3 of its 1-tight
                  neighbors (one per grid-line direction)
  search_swap2    remove the 2 neighbors of a 2-tight trigger node, insert
                  it plus 1-tight nodes / the corner completion
  search_swap3    remove 3 solution nodes around a 3-tight trigger (case I)
                  or around a pair of 2-tight triggers sharing one solution
                  neighbor (case II)
  search_trellis  remove all solution nodes of a 2D facet, reinsert via
                  maximum bipartite matching over the facet's grid lines

Each search has a fast JIT-compiled twin used by local_search; the pure
versions here are the readable reference and accept an injected matcher.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .matching import BipartiteGraph, hopcroft_karp
from .state import SolutionState


@dataclass(frozen=True)
class Move:
    """One improving exchange: remove `removals`, then insert `insertions`."""

    removals: tuple[int, ...]
    insertions: tuple[int, ...]

    @property
    def gain(self) -> int:
        return len(self.insertions) - len(self.removals)


class LsLevel(enum.Enum):
    """Neighborhood pipeline selector."""

    L1 = "1"
    L2 = "2"
    TR = "tr"
    L3 = "3"


@dataclass
class LocalSearchStats:
    initial_size: int
    final_size: int
    moves: int


def _rng_state(rng: random.Random) -> np.ndarray:
    return np.array([rng.getrandbits(64) | 1], dtype=np.uint64)


def _require_maximal(state: SolutionState) -> None:
    if not state.is_maximal():
        raise ValueError("search requires a maximal solution (no free nodes)")


def maximalize(state: SolutionState, rng: random.Random) -> int:
    """Insert uniformly random free nodes until none remain."""
    return int(K.maximalize(*state._args(), _rng_state(rng)))


def apply_move(state: SolutionState, move: Move) -> None:
    """Apply removals then insertions; insert() preconditions double-check
    that the move is sound."""
    for x in move.removals:
        state.remove(x)
    for v in move.insertions:
        state.insert(v)


# --------------------------------------------------------------------------
# geometry helpers on dense ids
# --------------------------------------------------------------------------

def _coord(v: int, ax: int, n: int) -> int:
    if ax == 0:
        return v // (n * n)
    if ax == 1:
        return (v // n) % n
    return v % n


def _line(v: int, ax: int, n: int):
    """All ids on the grid line through v along axis ax."""
    n2 = n * n
    if ax == 0:
        base = v % n2
        return range(base, base + n * n2, n2)
    if ax == 1:
        base = v - ((v // n) % n) * n
        return range(base, base + n2, n)
    base = v - v % n
    return range(base, base + n)


def _dir(v: int, w: int, n: int) -> int:
    """Axis of the grid line through two adjacent ids."""
    n2 = n * n
    if v // n2 != w // n2:
        return 0
    if (v // n) % n != (w // n) % n:
        return 1
    return 2


def _adjacent(v: int, w: int, n: int) -> bool:
    if v == w:
        return False
    n2 = n * n
    same = (v // n2 == w // n2) + ((v // n) % n == (w // n) % n) + (v % n == w % n)
    return same == 2


def _isect(a: int, da: int, b: int, db: int, n: int) -> int:
    """Intersection id of line(a, da) and line(b, db), or -1 if none."""
    if da == db:
        return -1
    dc = 3 - da - db
    if _coord(a, dc, n) != _coord(b, dc, n):
        return -1
    coords = [0, 0, 0]
    coords[da] = _coord(b, da, n)
    coords[db] = _coord(a, db, n)
    coords[dc] = _coord(a, dc, n)
    return (coords[0] * n + coords[1]) * n + coords[2]


def _first_one_tight(state: SolutionState, x: int, d: int) -> int:
    tau = state.tau
    for w in _line(x, d, state.n):
        if w != x and tau[w] == 1:
            return w
    raise AssertionError("mu counter promised a 1-tight node on the line")


# --------------------------------------------------------------------------
# (1, n^2)-swap
# --------------------------------------------------------------------------

def search_swap1(state: SolutionState) -> Move | None:
    """First solution node whose grid lines hold 1-tight nodes in >= 2
    directions; inserting one per direction gains nu(x) - 1 >= 1."""
    _require_maximal(state)
    mu = state.mu
    for x in state.perm[: state.sol_count]:
        x = int(x)
        b = 3 * x
        cnt = int(mu[b] > 0) + int(mu[b + 1] > 0) + int(mu[b + 2] > 0)
        if cnt >= 2:
            ins = tuple(
                _first_one_tight(state, x, d) for d in range(3) if mu[b + d] > 0
            )
            return Move((x,), ins)
    return None


# --------------------------------------------------------------------------
# (2, n^2)-swap
# --------------------------------------------------------------------------

def search_swap2(state: SolutionState) -> Move | None:
    """Scan 2-tight trigger nodes u with solution neighbors {x, y}.

    Candidate insertions besides u live on the two other lines through x
    and through y; the corner x + y - u joins only when both of its host
    lines carry no 1-tight node and it is itself 2-tight.
    """
    _require_maximal(state)
    n = state.n
    tau = state.tau
    nbrs = state.nbrs
    mu = state.mu
    member = state.member
    start = state.sol_count + state.free_count
    for u in state.perm[start:]:
        u = int(u)
        if tau[u] != 2:
            continue
        x = int(nbrs[3 * u])
        y = int(nbrs[3 * u + 1])
        du = _dir(u, x, n)
        dy = _dir(u, y, n)
        cnt = 0
        for d in range(3):
            if d != du and mu[3 * x + d] > 0:
                cnt += 1
            if d != dy and mu[3 * y + d] > 0:
                cnt += 1
        corner = x + y - u
        use_corner = (
            member[corner]
            and tau[corner] == 2
            and mu[3 * x + dy] == 0
            and mu[3 * y + du] == 0
        )
        if use_corner:
            cnt += 1
        if cnt < 2:
            continue
        ins = [u]
        for d in range(3):
            if d != du and mu[3 * x + d] > 0:
                ins.append(_first_one_tight(state, x, d))
        for d in range(3):
            if d != dy and mu[3 * y + d] > 0:
                ins.append(_first_one_tight(state, y, d))
        if use_corner:
            ins.append(corner)
        return Move((x, y), tuple(ins))
    return None


# --------------------------------------------------------------------------
# (3, n^2)-swap
# --------------------------------------------------------------------------

def _corner_candidate(state: SolutionState, w: int, anchors: tuple[int, ...]) -> bool:
    """True iff w exists, all of its solution neighbors are among anchors."""
    if not state.member[w]:
        return False
    t = int(state.tau[w])
    if t < 2:
        return False
    return all(int(state.nbrs[3 * w + i]) in anchors for i in range(t))


def search_swap3(state: SolutionState) -> Move | None:
    """Case I: 3-tight triggers.  Case II: pairs of 2-tight triggers with a
    single common solution neighbor; an O(1) upper-bound filter guards an
    O(n) exact confirmation scan."""
    _require_maximal(state)
    mv = _swap3_case1(state)
    if mv is not None:
        return mv
    return _swap3_case2(state)


def _swap3_case1(state: SolutionState) -> Move | None:
    n = state.n
    tau = state.tau
    nbrs = state.nbrs
    mu = state.mu
    member = state.member
    start = state.sol_count + state.free_count
    for u in state.perm[start:]:
        u = int(u)
        if tau[u] != 3:
            continue
        x = int(nbrs[3 * u])
        y = int(nbrs[3 * u + 1])
        z = int(nbrs[3 * u + 2])
        dx = _dir(u, x, n)
        dy = _dir(u, y, n)
        dz = _dir(u, z, n)
        cnt = 0
        lines = []
        for a, da in ((x, dx), (y, dy), (z, dz)):
            for d in range(3):
                if d != da and mu[3 * a + d] > 0:
                    cnt += 1
                    lines.append((a, d))
        corners = []
        for a, da, b, db in ((x, dx, y, dy), (x, dx, z, dz), (y, dy, z, dz)):
            c = a + b - u
            # c sits on line(a, db) and line(b, da)
            if (
                member[c]
                and tau[c] == 2
                and mu[3 * a + db] == 0
                and mu[3 * b + da] == 0
            ):
                cnt += 1
                corners.append(c)
        if cnt < 3:
            continue
        ins = [u]
        ins.extend(_first_one_tight(state, a, d) for a, d in lines)
        ins.extend(corners)
        return Move((x, y, z), tuple(ins))
    return None


def _swap3_case2(state: SolutionState) -> Move | None:
    n = state.n
    tau = state.tau
    nbrs = state.nbrs
    mu = state.mu
    for xi in state.perm[: state.sol_count]:
        x = int(xi)
        # 2-tight neighbors of x, with the direction they share with x
        triggers: list[tuple[int, int]] = []
        for d in range(3):
            for w in _line(x, d, n):
                if w != x and tau[w] == 2:
                    triggers.append((w, d))
        for i in range(len(triggers)):
            u, du = triggers[i]
            yu = int(nbrs[3 * u])
            if yu == x:
                yu = int(nbrs[3 * u + 1])
            for j in range(i + 1, len(triggers)):
                v, dv = triggers[j]
                if dv == du:
                    continue
                zv = int(nbrs[3 * v])
                if zv == x:
                    zv = int(nbrs[3 * v + 1])
                if zv == yu:
                    continue
                mv = _try_case2(state, x, u, v, yu, zv, du, dv)
                if mv is not None:
                    return mv
    return None


def _case2_lines(x, u, v, y, z, du, dv, n):
    """The five candidate lines (anchor, axis) left after removing {x,y,z}
    and inserting {u,v}."""
    dw = 3 - du - dv
    eu = _dir(u, y, n)
    ev = _dir(v, z, n)
    lines = [(x, dw)]
    lines.extend((y, d) for d in range(3) if d != eu)
    lines.extend((z, d) for d in range(3) if d != ev)
    return lines


def _try_case2(state, x, u, v, y, z, du, dv) -> Move | None:
    n = state.n
    tau = state.tau
    mu = state.mu
    member = state.member
    lines = _case2_lines(x, u, v, y, z, du, dv, n)
    anchors = (x, y, z)

    # adjusted per-line 1-tight counts: drop the O(1) points adjacent to u or v
    adj = []
    for a, d in lines:
        count = int(mu[3 * a + d])
        if count:
            drop = set()
            for t in (u, v):
                for dd in range(3):
                    w = _isect(a, d, t, dd, n)
                    if w >= 0 and w != a and member[w] and tau[w] == 1:
                        drop.add(w)
            count -= len(drop)
        adj.append(count)

    # corner candidates: pairwise intersections of candidate lines of
    # different anchors
    corner_mask: dict[int, int] = {}
    for i in range(len(lines)):
        a, da = lines[i]
        for j in range(i + 1, len(lines)):
            b, db = lines[j]
            if a == b:
                continue
            w = _isect(a, da, b, db, n)
            if w < 0 or w == u or w == v:
                continue
            if not _corner_candidate(state, w, anchors):
                continue
            if _adjacent(w, u, n) or _adjacent(w, v, n):
                continue
            corner_mask[w] = corner_mask.get(w, 0) | (1 << i) | (1 << j)

    nu_hat = sum(1 for c in adj if c > 0)
    for w, mask in corner_mask.items():
        hosts_empty = all(
            adj[i] == 0 for i in range(len(lines)) if mask & (1 << i)
        )
        if hosts_empty:
            nu_hat += 1
    if nu_hat < 2:
        return None

    size, chosen = _case2_exact(state, lines, u, v, anchors)
    if size < 2:
        return None
    return Move((x, y, z), (u, v) + tuple(chosen))


def _case2_exact(state, lines, u, v, anchors):
    """Exact MIS over the candidate nodes of the five lines.

    Candidates on a single line whose only conflicts are with nodes of the
    same line are interchangeable ("clean"); the remainder (multi-line
    corners and cross-line conflicts through grid lines outside the
    candidate set) are few and enumerated by branch and bound.
    """
    n = state.n
    n2 = n * n
    tau = state.tau
    member = state.member

    cand_mask: dict[int, int] = {}
    for li, (a, d) in enumerate(lines):
        for w in _line(a, d, n):
            if w == a or w == u or w == v or not member[w] or tau[w] == 0:
                continue
            if w in cand_mask:
                cand_mask[w] |= 1 << li
                continue
            t = int(tau[w])
            if any(int(state.nbrs[3 * w + i]) not in anchors for i in range(t)):
                continue
            if _adjacent(w, u, n) or _adjacent(w, v, n):
                continue
            cand_mask[w] = 1 << li

    if not cand_mask:
        return 0, []

    # group candidates by each of their three grid lines to find conflicts
    groups: dict[int, list[int]] = {}
    for w in cand_mask:
        r, c, s = w // n2, (w // n) % n, w % n
        for key in (c * n + s, n2 + r * n + s, 2 * n2 + r * n + c):
            groups.setdefault(key, []).append(w)

    conflicts: dict[int, set[int]] = {w: set() for w in cand_mask}
    for members_on_line in groups.values():
        if len(members_on_line) > 1:
            for w in members_on_line:
                conflicts[w].update(o for o in members_on_line if o != w)

    clean_by_line: dict[int, int] = {}
    dirty: list[int] = []
    for w, mask in sorted(cand_mask.items()):
        if mask & (mask - 1):  # on two or more candidate lines
            dirty.append(w)
            continue
        li = mask.bit_length() - 1
        if all(cand_mask[o] & mask for o in conflicts[w]):
            clean_by_line.setdefault(li, w)
        else:
            dirty.append(w)

    all_lines_mask = (1 << len(lines)) - 1
    clean_mask = 0
    for li in clean_by_line:
        clean_mask |= 1 << li

    if len(dirty) > 32:
        raise AssertionError(
            f"candidate confirmation blew up: {len(dirty)} conflicted nodes"
        )

    best_size = 0
    best_set: list[int] = []

    def leftovers(used: int) -> list[int]:
        return [w for li, w in clean_by_line.items() if not used & (1 << li)]

    def bb(i: int, used: int, banned: set[int], chosen: list[int]) -> None:
        nonlocal best_size, best_set
        remaining_lines = bin(all_lines_mask & ~used).count("1")
        if len(chosen) + remaining_lines <= best_size:
            return
        if i == len(dirty):
            extra = leftovers(used)
            if len(chosen) + len(extra) > best_size:
                best_size = len(chosen) + len(extra)
                best_set = chosen + extra
            return
        w = dirty[i]
        if w not in banned and not cand_mask[w] & used:
            bb(i + 1, used | cand_mask[w], banned | conflicts[w], chosen + [w])
        bb(i + 1, used, banned, chosen)

    bb(0, 0, set(), [])
    return best_size, best_set


# --------------------------------------------------------------------------
# Trellis search
# --------------------------------------------------------------------------

def search_trellis(state: SolutionState, matcher=hopcroft_karp) -> Move | None:
    """Facet-by-facet matching search.

    For each of the 3n facets: R = solution nodes on the facet; members
    whose perpendicular line carries a 1-tight node (R'') will be replaced
    by one node of that off-facet clique; the rest (R') plus the on-facet
    1-tight nodes owned by R and the 2-tight nodes with both neighbors in R
    become edges of a bipartite graph over the facet's 2n grid lines.  A
    maximum matching exceeding |R'| yields an improving exchange of gain
    |M| - |R'|.
    """
    _require_maximal(state)
    n = state.n
    tau = state.tau
    nbrs = state.nbrs
    mu = state.mu
    sol = [int(v) for v in state.perm[: state.sol_count]]
    for d in range(3):
        a_ax, b_ax = (1, 2) if d == 0 else (0, 2) if d == 1 else (0, 1)
        buckets: list[list[int]] = [[] for _ in range(n)]
        for x in sol:
            buckets[_coord(x, d, n)].append(x)
        for k in range(n):
            r_nodes = buckets[k]
            if not r_nodes:
                continue
            if all(
                mu[3 * x] == 0 and mu[3 * x + 1] == 0 and mu[3 * x + 2] == 0
                for x in r_nodes
            ):
                continue  # no 1-tight neighbor anywhere: facet cannot improve
            r_perp = [x for x in r_nodes if mu[3 * x + d] > 0]
            r_flat_count = len(r_nodes) - len(r_perp)
            edges: list[tuple[int, int, int]] = []
            for x in r_nodes:
                if mu[3 * x + d] == 0:
                    edges.append((_coord(x, a_ax, n), _coord(x, b_ax, n), x))
                for ax in (a_ax, b_ax):
                    for w in _line(x, ax, n):
                        if w == x:
                            continue
                        t = tau[w]
                        if t == 1:
                            edges.append((_coord(w, a_ax, n), _coord(w, b_ax, n), w))
                        elif t == 2:
                            o = int(nbrs[3 * w])
                            if o == x:
                                o = int(nbrs[3 * w + 1])
                            if x < o and _coord(o, d, n) == k:
                                edges.append(
                                    (_coord(w, a_ax, n), _coord(w, b_ax, n), w)
                                )
            if len(edges) <= r_flat_count:
                continue
            matched = matcher(BipartiteGraph(n, n, tuple(edges)))
            if len(matched) > r_flat_count:
                ins = [pay for _l, _r, pay in matched]
                ins.extend(_first_one_tight(state, x, d) for x in r_perp)
                return Move(tuple(r_nodes), tuple(ins))
    return None


# --------------------------------------------------------------------------
# kernel-backed fast variants
# --------------------------------------------------------------------------

def fast_swap1(state: SolutionState) -> Move | None:
    x, k, buf = K.swap1_move(*state._args())
    if x < 0:
        return None
    return Move((int(x),), tuple(int(buf[i]) for i in range(k)))


def fast_swap2(state: SolutionState) -> Move | None:
    found, rem, ins, k = K.swap2_move(*state._args())
    if not found:
        return None
    return Move(
        (int(rem[0]), int(rem[1])), tuple(int(ins[i]) for i in range(k))
    )


def fast_trellis(state: SolutionState) -> Move | None:
    found, rem, rc, ins, ic = K.trellis_move(*state._args())
    if not found:
        return None
    return Move(
        tuple(int(rem[i]) for i in range(rc)),
        tuple(int(ins[i]) for i in range(ic)),
    )


_PIPELINES_FAST = {
    LsLevel.L1: (fast_swap1,),
    LsLevel.L2: (fast_swap1, fast_swap2),
    LsLevel.TR: (fast_swap1, fast_swap2, fast_trellis),
    LsLevel.L3: (fast_swap1, fast_swap2, search_swap3),
}

_PIPELINES_PURE = {
    LsLevel.L1: (search_swap1,),
    LsLevel.L2: (search_swap1, search_swap2),
    LsLevel.TR: (search_swap1, search_swap2, search_trellis),
    LsLevel.L3: (search_swap1, search_swap2, search_swap3),
}


def local_search(
    state: SolutionState,
    level: LsLevel,
    rng: random.Random,
    fast: bool = True,
) -> LocalSearchStats:
    """Maximalize, then run the level's searches cheapest-first, restarting
    from the cheapest neighborhood after every applied move.  Terminates
    when every search in the pipeline reports no improvement."""
    initial = state.sol_count
    rs = _rng_state(rng)
    K.maximalize(*state._args(), rs)
    searches = (_PIPELINES_FAST if fast else _PIPELINES_PURE)[level]
    moves = 0
    i = 0
    while i < len(searches):
        mv = searches[i](state)
        if mv is None:
            i += 1
            continue
        apply_move(state, mv)
        K.maximalize(*state._args(), rs)
        moves += 1
        i = 0
    return LocalSearchStats(initial, state.sol_count, moves)
