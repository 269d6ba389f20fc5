"""Generating, inspecting, and serializing partial Latin square instances.

Run: python demos/01_instances.py
"""

import plse

# A partial Latin square is a set of (row, column, symbol) triples obeying
# the Latin square condition.  Two triples conflict iff they agree in two
# coordinates: same cell, same symbol in a row, or same symbol in a column.
print("distance((1,1,1),(2,1,1)) =", plse.hamming_distance((1, 1, 1), (2, 1, 1)))
print("valid PLS set:", plse.is_pls_set(3, {(1, 1, 1), (2, 2, 1), (3, 3, 1)}))
print("row conflict:  ", plse.is_pls_set(3, {(1, 1, 1), (1, 2, 1)}))

# Quasigroup completion (QC): random feasible assignments until the target
# fill ratio is reached.  The result may or may not be completable.
qc = plse.generate_qc(9, 0.4, seed=42)
print(f"\nQC n=9 r=0.4: {qc.cell_count} given cells")
for row in qc.grid():
    print(" ".join(f"{s or '.':>2}" for s in row))

# Quasigroup with holes (QWH): punch holes in a random complete Latin
# square, so a complete extension always exists.
qwh = plse.generate_qwh(9, 0.6, seed=42)
print(f"\nQWH n=9 r=0.6: {qwh.cell_count} given cells (always completable)")
for row in qwh.grid():
    print(" ".join(f"{s or '.':>2}" for s in row))

# Instances round-trip through a plain text format (0 = empty cell).
text = plse.serialize_instance(qc)
assert plse.parse_instance(text) == qc
print("\nserialized form of the QC instance:")
print(text)
