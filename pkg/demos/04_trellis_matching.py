"""Why the Trellis (facet-matching) neighborhood sees further than 2-swaps.

The script hunts for a solution that is already 1- and 2-maximal, where an
improving exchange still exists inside a single 2D facet; the bipartite
matching over the facet's grid lines finds it.

Run: python demos/04_trellis_matching.py
"""

import random

import plse
from plse.matching import BipartiteGraph, hopcroft_karp
from plse.neighborhoods import (
    apply_move,
    fast_swap1,
    fast_swap2,
    maximalize,
    search_swap2,
    search_trellis,
)
from plse.state import SolutionState

# A toy matching first: lines are vertices, candidate nodes are edges.
g = BipartiteGraph(3, 3, ((0, 0, 100), (0, 1, 101), (1, 1, 102), (2, 2, 103)))
print("toy matching:", hopcroft_karp(g))

for seed in range(2000):
    inst = plse.generate_qc(6, 0.35, seed)
    mis = plse.transform(inst)
    st = SolutionState(mis)
    maximalize(st, random.Random(seed ^ 0xA5A5))
    # exhaust the cheaper neighborhoods
    i = 0
    searches = [fast_swap1, fast_swap2]
    while i < len(searches):
        mv = searches[i](st)
        if mv is None:
            i += 1
        else:
            apply_move(st, mv)
            i = 0
    assert search_swap2(st) is None
    mv = search_trellis(st)
    if mv is None:
        continue
    print(f"\nseed {seed}: 1- and 2-maximal solution of size {st.sol_count}")
    print(f"facet exchange: remove {len(mv.removals)}, insert {len(mv.insertions)} "
          f"(gain +{mv.gain})")
    print("removed:", sorted(mis.triple_of(v) for v in mv.removals))
    print("inserted:", sorted(mis.triple_of(v) for v in mv.insertions))
    apply_move(st, mv)
    assert plse.validate_extension(inst, st.solution_triples())
    break
else:
    raise SystemExit("no example found in seed range")
