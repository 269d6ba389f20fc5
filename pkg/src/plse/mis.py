"""Transformation of a PLSE instance into its maximum-independent-set instance.

A triple (r, c, s) is a node iff it can still be assigned: its cell is empty
and s is unused in row r and column c.  Two nodes are adjacent iff their
Hamming distance is 1, i.e. they lie on a common grid line of the cube
[n]^3.  Edges are never materialized; adjacency is resolved through an
n x n x n occupancy table in O(n) probes per node.

Nodes are handled as dense ids: id = (r-1)*n^2 + (c-1)*n + (s-1).
"""

from __future__ import annotations

import numpy as np

from .core import PlsError, PlsInstance, Triple, is_pls_set


class MisInstance:
    """Immutable MIS view of a PLSE instance with O(1) membership lookups."""

    def __init__(self, inst: PlsInstance, member: np.ndarray):
        self.instance = inst
        self.n = inst.n
        self.n2 = inst.n * inst.n
        self.n3 = self.n2 * inst.n
        self.member = member  # uint8[n^3], 1 iff the id is a node
        self.node_ids = np.flatnonzero(member).astype(np.int32)
        self.node_count = int(self.node_ids.shape[0])

    # --- id <-> triple -------------------------------------------------
    def id_of(self, t: Triple) -> int:
        r, c, s = t
        return (r - 1) * self.n2 + (c - 1) * self.n + (s - 1)

    def triple_of(self, v: int) -> Triple:
        r, rem = divmod(int(v), self.n2)
        c, s = divmod(rem, self.n)
        return (r + 1, c + 1, s + 1)

    def contains(self, v: int) -> bool:
        return 0 <= v < self.n3 and bool(self.member[v])

    def _check_node(self, v: int) -> None:
        if not self.contains(v):
            raise ValueError(f"id {v} is not a node of this instance")

    # --- adjacency -----------------------------------------------------
    def line_ids(self, v: int, d: int):
        """All n ids on the grid line through v in direction d (1, 2 or 3)."""
        n, n2 = self.n, self.n2
        if d == 1:
            base = v % n2
            return range(base, base + n * n2, n2)
        if d == 2:
            base = v - ((v // n) % n) * n
            return range(base, base + n * n, n)
        if d == 3:
            base = v - v % n
            return range(base, base + n)
        raise ValueError(f"direction must be 1, 2 or 3, got {d}")

    def line_nodes(self, v: int, d: int) -> list[int]:
        """Nodes on the direction-d grid line through v, excluding v itself."""
        self._check_node(v)
        member = self.member
        return [w for w in self.line_ids(v, d) if w != v and member[w]]

    def neighbors(self, v: int) -> list[int]:
        """All nodes at Hamming distance 1 from v; at most 3(n-1) of them."""
        self._check_node(v)
        out = []
        for d in (1, 2, 3):
            out.extend(self.line_nodes(v, d))
        return out

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))


def transform(inst: PlsInstance) -> MisInstance:
    """Build the MIS instance: every still-assignable triple becomes a node."""
    n = inst.n
    cell_filled = np.zeros((n, n), dtype=bool)
    row_has = np.zeros((n, n), dtype=bool)  # [row, symbol]
    col_has = np.zeros((n, n), dtype=bool)  # [column, symbol]
    for r, c, s in inst.triples:
        cell_filled[r - 1, c - 1] = True
        row_has[r - 1, s - 1] = True
        col_has[c - 1, s - 1] = True
    member3 = (
        (~cell_filled)[:, :, None] & (~row_has)[:, None, :] & (~col_has)[None, :, :]
    )
    return MisInstance(inst, member3.reshape(-1).astype(np.uint8))


def validate_extension(inst: PlsInstance, triples) -> bool:
    """Check a candidate extension on both sides of the MIS correspondence.

    The MIS-side check (all triples are nodes forming an independent set) and
    the PLS-side check (the triples are a PLS set disjoint from and compatible
    with the given assignment) must agree; a disagreement would mean the
    transformation itself is broken and raises PlsError.
    """
    triples = set(triples)
    mis = transform(inst)

    pls_ok = False
    if not (triples & set(inst.triples)):
        try:
            pls_ok = is_pls_set(inst.n, triples) and is_pls_set(
                inst.n, triples | set(inst.triples)
            )
        except ValueError:
            pls_ok = False

    mis_ok = True
    ids = []
    for t in triples:
        if not all(1 <= c <= inst.n for c in t):
            mis_ok = False
            break
        v = mis.id_of(t)
        if not mis.contains(v):
            mis_ok = False
            break
        ids.append(v)
    if mis_ok:
        chosen = set(ids)
        for v in ids:
            if any(w in chosen for w in mis.neighbors(v)):
                mis_ok = False
                break

    if mis_ok != pls_ok:
        raise PlsError(
            "internal error: MIS-side and PLS-side feasibility checks disagree "
            f"(mis={mis_ok}, pls={pls_ok})"
        )
    return mis_ok
