"""The four neighborhood searches and what each one adds.

Run: python demos/03_local_search.py
"""

import random

import plse
from plse.ils import greedy_init
from plse.neighborhoods import LsLevel, local_search

inst = plse.generate_qc(30, 0.55, seed=8)
mis = plse.transform(inst)
print(f"QC n=30 r=0.55: {inst.cell_count} given, {mis.node_count} assignable triples")

base = greedy_init(mis, random.Random(0))
print(f"greedy start: {base.sol_count} cells added\n")

# Each level subsumes the previous one:
#   L1: remove 1 node, reinsert per-direction 1-tight neighbors
#   L2: + remove the 2 neighbors of a 2-tight trigger
#   TR: + remove a whole facet's solution nodes, reinsert via matching
#   L3: + remove 3 nodes around 3-tight triggers / 2-tight trigger pairs
for level in (LsLevel.L1, LsLevel.L2, LsLevel.TR, LsLevel.L3):
    st = base.copy()
    res = local_search(st, level, random.Random(1))
    print(
        f"{level.name}: +{res.final_size - res.initial_size} cells "
        f"in {res.moves} moves -> {res.final_size}"
    )
    assert plse.validate_extension(inst, st.solution_triples())
