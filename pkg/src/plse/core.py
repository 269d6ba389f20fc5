"""Partial Latin square domain types, validity checks, generators, and file I/O.

A partial Latin square (PLS) of order n assigns symbols 1..n to an n x n grid
so that no symbol repeats within a row or a column.  Assignments are stored as
triples (row, column, symbol) with all coordinates in 1..n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

Triple = tuple[int, int, int]


class PlsError(Exception):
    """Base class for errors raised by this package."""


class FormatError(PlsError):
    """Instance text does not follow the .pls format."""


class DuplicateCellError(PlsError):
    """Two triples assign (possibly different) symbols to the same cell."""


class LatinConflictError(PlsError):
    """A symbol repeats within a row or a column."""


class GenerationError(PlsError):
    """Random instance generation ran out of feasible assignments."""


def hamming_distance(v: Triple, w: Triple) -> int:
    """Number of coordinates in which the two triples differ (0..3)."""
    return (v[0] != w[0]) + (v[1] != w[1]) + (v[2] != w[2])


def _check_range(n: int, triples) -> None:
    for t in triples:
        if len(t) != 3 or not all(1 <= c <= n for c in t):
            raise ValueError(f"triple {t!r} out of range for n={n}")


def is_pls_set(n: int, triples) -> bool:
    """True iff all pairwise Hamming distances are >= 2.

    Equivalent to the Latin square condition: two triples at distance <= 1
    share two coordinates, i.e. collide in cell, (row, symbol) or
    (column, symbol).  Raises ValueError on out-of-range coordinates.
    """
    triples = set(triples)
    _check_range(n, triples)
    cells: set[tuple[int, int]] = set()
    row_sym: set[tuple[int, int]] = set()
    col_sym: set[tuple[int, int]] = set()
    for r, c, s in triples:
        if (r, c) in cells or (r, s) in row_sym or (c, s) in col_sym:
            return False
        cells.add((r, c))
        row_sym.add((r, s))
        col_sym.add((c, s))
    return True


def are_compatible(s: set[Triple] | frozenset[Triple], l: set[Triple] | frozenset[Triple]) -> bool:
    """True iff the union of the two disjoint PLS sets is itself a PLS set.

    Raises ValueError if the inputs overlap or either is not a PLS set.
    """
    s = set(s)
    l = set(l)
    if s & l:
        raise ValueError("compatibility is defined for disjoint PLS sets")
    n = max((max(t) for t in s | l), default=2)
    if not is_pls_set(n, s) or not is_pls_set(n, l):
        raise ValueError("inputs must each be valid PLS sets")
    return is_pls_set(n, s | l)


@dataclass(frozen=True)
class PlsInstance:
    """A PLSE problem input: grid length n and the pre-assigned triples L."""

    n: int
    triples: frozenset[Triple] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"grid length must be >= 2, got {self.n}")
        object.__setattr__(self, "triples", frozenset(self.triples))
        _check_range(self.n, self.triples)
        cells: dict[tuple[int, int], int] = {}
        row_sym: dict[tuple[int, int], int] = {}
        col_sym: dict[tuple[int, int], int] = {}
        for r, c, s in sorted(self.triples):
            if (r, c) in cells:
                raise DuplicateCellError(
                    f"cell ({r},{c}) assigned twice (symbols {cells[r, c]} and {s})"
                )
            if (r, s) in row_sym:
                raise LatinConflictError(
                    f"symbol {s} appears twice in row {r} (columns {row_sym[r, s]} and {c})"
                )
            if (c, s) in col_sym:
                raise LatinConflictError(
                    f"symbol {s} appears twice in column {c} (rows {col_sym[c, s]} and {r})"
                )
            cells[r, c] = s
            row_sym[r, s] = c
            col_sym[c, s] = r

    @property
    def cell_count(self) -> int:
        return len(self.triples)

    def grid(self) -> list[list[int]]:
        """Dense n x n grid; 0 marks an empty cell."""
        g = [[0] * self.n for _ in range(self.n)]
        for r, c, s in self.triples:
            g[r - 1][c - 1] = s
        return g

    @classmethod
    def from_grid(cls, rows: list[list[int]]) -> "PlsInstance":
        n = len(rows)
        triples = set()
        for i, row in enumerate(rows):
            for j, s in enumerate(row):
                if s:
                    triples.add((i + 1, j + 1, s))
        return cls(n, frozenset(triples))

    def is_complete(self) -> bool:
        return len(self.triples) == self.n * self.n


@dataclass(frozen=True)
class GenScheme:
    """A named generation scheme: 'qc' or 'qwh' with ratio r and a seed."""

    scheme: str
    r: float
    seed: int

    def __post_init__(self):
        if self.scheme not in ("qc", "qwh"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"ratio must be in [0,1], got {self.r}")

    def build(self, n: int) -> PlsInstance:
        if self.scheme == "qc":
            return generate_qc(n, self.r, self.seed)
        return generate_qwh(n, self.r, self.seed)


def cyclic_latin_square(n: int) -> set[Triple]:
    """The order-n cyclic Latin square: symbol ((i+j-2) mod n) + 1 at (i, j)."""
    return {(i, j, ((i + j - 2) % n) + 1) for i in range(1, n + 1) for j in range(1, n + 1)}


def random_latin_square(n: int, seed: int) -> set[Triple]:
    """Cyclic square scrambled by independent random row/column/symbol permutations.

    Not uniform over all Latin squares, which is fine for benchmark
    generation purposes.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = random.Random(seed)
    rows = list(range(1, n + 1))
    cols = list(range(1, n + 1))
    syms = list(range(1, n + 1))
    rng.shuffle(rows)
    rng.shuffle(cols)
    rng.shuffle(syms)
    return {
        (rows[i - 1], cols[j - 1], syms[((i + j - 2) % n)])
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }


def generate_qwh(n: int, r: float, seed: int) -> PlsInstance:
    """Quasigroup-with-holes instance: punch holes in a random complete square.

    Keeps exactly floor(n^2 * r) cells, so the optimal extension value is
    always n^2 - floor(n^2 * r).  Uses random_latin_square(n, seed) as the
    base square, so tests can reconstruct the removed cells.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"ratio must be in [0,1], got {r}")
    square = random_latin_square(n, seed)
    keep = int(n * n * r)
    rng = random.Random(seed)
    kept = rng.sample(sorted(square), keep)
    return PlsInstance(n, frozenset(kept))


_RESEED = 0x9E3779B97F4A7C15


def generate_qc(n: int, r: float, seed: int, max_restarts: int = 100) -> PlsInstance:
    """Quasigroup-completion instance: repeated random feasible assignments.

    Starting from an empty grid, each step picks a uniformly random feasible
    (cell, symbol) pair until floor(n^2 * r) cells are filled.  The greedy
    process can dead-end (no feasible pair left); then it restarts with a
    derived sub-seed, up to max_restarts times, before raising
    GenerationError.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"ratio must be in [0,1], got {r}")
    target = int(n * n * r)
    for attempt in range(max_restarts + 1):
        sub_seed = (seed + attempt * _RESEED) & 0xFFFFFFFFFFFFFFFF
        triples = _qc_attempt(n, target, random.Random(sub_seed))
        if triples is not None:
            return PlsInstance(n, frozenset(triples))
    raise GenerationError(
        f"qc generation failed for n={n} r={r} seed={seed} after {max_restarts} restarts"
    )


def _qc_attempt(n: int, target: int, rng: random.Random) -> set[Triple] | None:
    row_used = [set() for _ in range(n + 1)]
    col_used = [set() for _ in range(n + 1)]
    empty = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    index = {cell: k for k, cell in enumerate(empty)}
    triples: set[Triple] = set()
    while len(triples) < target:
        placed = False
        # Rejection sampling is uniform over feasible (cell, symbol) pairs.
        for _ in range(8 * n):
            i, j = empty[rng.randrange(len(empty))]
            s = rng.randint(1, n)
            if s not in row_used[i] and s not in col_used[j]:
                placed = True
                break
        if not placed:
            feasible = [
                (i, j, s)
                for (i, j) in empty
                for s in range(1, n + 1)
                if s not in row_used[i] and s not in col_used[j]
            ]
            if not feasible:
                return None
            i, j, s = feasible[rng.randrange(len(feasible))]
        triples.add((i, j, s))
        row_used[i].add(s)
        col_used[j].add(s)
        k = index.pop((i, j))
        last = empty.pop()
        if last != (i, j):
            empty[k] = last
            index[last] = k
    return triples


def parse_instance(text: str) -> PlsInstance:
    """Parse the .pls text format (see serialize_instance)."""
    lines = [ln for ln in text.splitlines()]
    stripped = [ln.strip() for ln in lines if ln.strip()]
    if not stripped:
        raise FormatError("empty instance text")
    try:
        n = int(stripped[0])
    except ValueError:
        raise FormatError(f"first line must be the grid length, got {stripped[0]!r}") from None
    if n < 2:
        raise FormatError(f"grid length must be >= 2, got {n}")
    if len(stripped) != n + 1:
        raise FormatError(f"expected {n} grid rows, got {len(stripped) - 1}")
    rows = []
    for i, ln in enumerate(stripped[1:], start=1):
        tokens = ln.split()
        if len(tokens) != n:
            raise FormatError(f"row {i} has {len(tokens)} entries, expected {n}")
        try:
            row = [int(t) for t in tokens]
        except ValueError:
            raise FormatError(f"row {i} contains a non-integer entry") from None
        for j, s in enumerate(row, start=1):
            if not 0 <= s <= n:
                raise FormatError(f"entry {s} at ({i},{j}) outside 0..{n}")
        rows.append(row)
    return PlsInstance.from_grid(rows)


def serialize_instance(inst: PlsInstance) -> str:
    """Render the .pls text format: grid length, then n rows of n entries.

    0 marks an empty cell; a trailing newline is always emitted.
    """
    out = [str(inst.n)]
    for row in inst.grid():
        out.append(" ".join(str(s) for s in row))
    return "\n".join(out) + "\n"
