"""The independent-set view of an extension problem.

Every still-assignable triple (empty cell, symbol unused in its row and
column) becomes a node; two nodes conflict iff they share a grid line of
the n x n x n cube.  Extending the partial square == picking a maximum
independent set.

Run: python demos/02_mis_view.py
"""

from collections import Counter

import plse
from plse.oracle import OracleBudget, brute_force_mis

inst = plse.generate_qc(5, 0.4, seed=3)
mis = plse.transform(inst)
print(f"n=5 r=0.4 QC instance: {inst.cell_count} given cells")
print(f"assignable triples (nodes): {mis.node_count} of {5 ** 3}")

# Node degrees are bounded by 3(n-1): at most n-1 conflicts along each of
# the three grid lines through a point.
degrees = Counter(mis.degree(int(v)) for v in mis.node_ids)
print("degree histogram:", dict(sorted(degrees.items())))
assert max(degrees) <= 3 * (5 - 1)

# The transformation is faithful in both directions: a set of triples is a
# valid extension iff it is an independent set of nodes.
good = {(1, 1, 2)} if plse.validate_extension(inst, {(1, 1, 2)}) else set()
print("validate_extension on a singleton:", bool(good) or "that cell/symbol is blocked")

# Small instances can be solved exactly.
size, witness = brute_force_mis(mis, OracleBudget(max_nodes=100))
print(f"exact optimum: {size} additional cells")
assert plse.validate_extension(inst, {mis.triple_of(v) for v in witness})
print(f"grid fill after optimal extension: {inst.cell_count + size} / 25")
