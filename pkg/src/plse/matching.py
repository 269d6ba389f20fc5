"""Maximum-cardinality bipartite matching (Hopcroft-Karp).

Used by the Trellis neighborhood search, where facet grid lines are the two
vertex classes and candidate nodes are edges.  Payloads ride along on edges
so callers can recover which candidate a matched edge stands for.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

Edge = tuple[int, int, int]  # (left, right, payload)

_INF = -1


@dataclass(frozen=True)
class BipartiteGraph:
    left_count: int
    right_count: int
    edges: tuple[Edge, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        seen = set()
        for l, r, _pay in self.edges:
            if not (0 <= l < self.left_count and 0 <= r < self.right_count):
                raise ValueError(f"edge ({l},{r}) out of range")
            if (l, r) in seen:
                raise ValueError(f"duplicate edge ({l},{r})")
            seen.add((l, r))


def hopcroft_karp(g: BipartiteGraph) -> list[Edge]:
    """Maximum matching as a list of edges, deterministic in insertion order.

    Runs in O(E * sqrt(V)) via BFS phase layering plus layered DFS
    augmentation.
    """
    adj: list[list[int]] = [[] for _ in range(g.left_count)]
    for i, (l, _r, _p) in enumerate(g.edges):
        adj[l].append(i)
    match_l = [-1] * g.left_count  # matched edge index per left vertex
    match_r = [-1] * g.right_count
    dist = [0] * g.left_count

    def bfs() -> int:
        q: deque[int] = deque()
        for l in range(g.left_count):
            if adj[l] and match_l[l] == -1:
                dist[l] = 0
                q.append(l)
            else:
                dist[l] = _INF
        frontier = _INF
        while q:
            l = q.popleft()
            if frontier != _INF and dist[l] >= frontier:
                continue
            for ei in adj[l]:
                r = g.edges[ei][1]
                me = match_r[r]
                if me == -1:
                    if frontier == _INF:
                        frontier = dist[l] + 1
                else:
                    l2 = g.edges[me][0]
                    if dist[l2] == _INF:
                        dist[l2] = dist[l] + 1
                        q.append(l2)
        return frontier

    def dfs(l: int, frontier: int) -> bool:
        for ei in adj[l]:
            r = g.edges[ei][1]
            me = match_r[r]
            if me == -1:
                if dist[l] + 1 != frontier:
                    continue
            else:
                l2 = g.edges[me][0]
                if dist[l2] != dist[l] + 1 or not dfs(l2, frontier):
                    continue
            match_l[l] = ei
            match_r[r] = ei
            return True
        dist[l] = _INF
        return False

    while True:
        frontier = bfs()
        if frontier == _INF:
            break
        for l in range(g.left_count):
            if adj[l] and match_l[l] == -1:
                dfs(l, frontier)
    matched = sorted(ei for ei in match_l if ei != -1)
    return [g.edges[ei] for ei in matched]
