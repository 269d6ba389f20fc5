"""Iterated local search: greedy start, descent, soft-tabu kicks.

Run: python demos/05_iterated_search.py
"""

import plse
from plse.ils import IlsConfig, run
from plse.neighborhoods import LsLevel

# A hard-region QC instance (intermediate fill ratio).
inst = plse.generate_qc(40, 0.6, seed=5)
mis = plse.transform(inst)
print(f"QC n=40 r=0.6: {inst.cell_count} given cells, {mis.node_count} candidate triples")

triples, stats = run(mis, IlsConfig(level=LsLevel.TR, time_limit=5.0, seed=5))
print(f"\nTr-ILS, 5 seconds:")
print(f"  greedy init : {stats.initial_size} cells added")
print(f"  best found  : {stats.best_size} (+{stats.improvement})")
print(f"  local searches run: {stats.iterations}, mean {stats.ls_time_ms_mean:.2f} ms")
print("  improvement trajectory (ms, size):")
for ms, size in stats.series:
    print(f"    {ms:9.1f}  {size}")

merged = plse.PlsInstance(inst.n, frozenset(inst.triples | triples))
print(f"\nfinal grid fill: {merged.cell_count} / {inst.n ** 2}"
      + ("  (complete square - provably optimal)" if merged.is_complete() else ""))

# A QWH instance is always completable; the solver certifies optimality by
# finishing the square and stops early.
qwh = plse.generate_qwh(30, 0.5, seed=11)
triples, stats = run(plse.transform(qwh), IlsConfig(LsLevel.TR, 30.0, seed=11))
print(f"\nQWH n=30 r=0.5: completed={stats.best_size == 900 - qwh.cell_count} "
      f"after {stats.elapsed_ms:.0f} ms")
