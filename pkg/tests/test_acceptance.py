"""Acceptance criteria, one test per criterion.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion
PASS/FAIL lines.  Criteria 6-8 drive 30-second solver budgets and are
additionally marked `slow`.
"""

import math
import random
import time

import numpy as np
import pytest

import plse
from plse import ils, oracle
from plse import _kernels as K
from plse.matching import BipartiteGraph, hopcroft_karp
from plse.neighborhoods import (
    LsLevel,
    apply_move,
    fast_swap1,
    fast_swap2,
    fast_trellis,
    local_search,
    maximalize,
    search_swap1,
    search_swap2,
    search_swap3,
    search_trellis,
)
from plse.oracle import OracleBudget
from plse.state import SolutionState, rebuild_from_scratch, states_equivalent

from conftest import drive, make_maximal_state

pytestmark = pytest.mark.acceptance


def report(num: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")


# --------------------------------------------------------------------------
# 1. oracle equivalence of all neighborhood searches
# --------------------------------------------------------------------------

def test_criterion_1_oracle_equivalence():
    budget = OracleBudget(max_nodes=300, max_n=5)
    ratios = [0.2, 0.3, 0.4, 0.5]
    states = 0
    disagreements = 0
    for n in (3, 4, 5):
        for i in range(100):
            r = ratios[i % len(ratios)]
            inst, mis, st = make_maximal_state(n, r, 10_000 * n + i)
            if mis.node_count == 0:
                st = SolutionState(mis)
            states += 1

            pure1, kern1 = search_swap1(st), fast_swap1(st)
            naive1 = oracle.naive_swap_search(st, 1, budget)
            if not ((pure1 is None) == (kern1 is None) == (naive1 is None)):
                disagreements += 1
            drive(st, [fast_swap1])

            pure2, kern2 = search_swap2(st), fast_swap2(st)
            naive2 = oracle.naive_swap_search(st, 2, budget)
            if not ((pure2 is None) == (kern2 is None) == (naive2 is None)):
                disagreements += 1

            puret, kernt = search_trellis(st), fast_trellis(st)
            naivet = oracle.naive_trellis_search(st, budget)
            if not ((puret is None) == (kernt is None) == (naivet is None)):
                disagreements += 1

            drive(st, [fast_swap1, fast_swap2])
            pure3 = search_swap3(st)
            naive3 = oracle.naive_swap_search(st, 3, budget)
            if not ((pure3 is None) == (naive3 is None)):
                disagreements += 1
    ok = disagreements == 0 and states == 300
    report(1, ok, f"{states} states x 4 searches, {disagreements} disagreements")
    assert ok


# --------------------------------------------------------------------------
# 2. approximation factors of the four local searches
# --------------------------------------------------------------------------

def _ceil_frac(num: int, den: int, opt: int) -> int:
    return -(-num * opt // den)


def test_criterion_2_approximation_factors():
    factors = {
        LsLevel.L1: (1, 2),
        LsLevel.L2: (5, 9),
        LsLevel.L3: (3, 5),
        LsLevel.TR: (5, 9),
    }
    shapes = [(3, 0.0), (3, 0.15), (3, 0.3), (4, 0.5), (4, 0.6), (5, 0.65), (5, 0.75)]
    budget = OracleBudget(max_nodes=30, max_n=5)
    instances = 0
    violations = 0
    seed = 0
    while instances < 200:
        n, r = shapes[seed % len(shapes)]
        seed += 1
        try:
            inst = plse.generate_qc(n, r, 777 + seed)
        except plse.PlsError:
            continue
        mis = plse.transform(inst)
        if not 1 <= mis.node_count <= budget.max_nodes:
            continue
        instances += 1
        opt, _ = oracle.brute_force_mis(mis, budget)
        for level, (num, den) in factors.items():
            st = SolutionState(mis)
            local_search(st, level, random.Random(seed), fast=True)
            if st.sol_count < _ceil_frac(num, den, opt):
                violations += 1
    ok = violations == 0
    report(2, ok, f"{instances} instances x 4 levels, {violations} factor violations")
    assert ok


# --------------------------------------------------------------------------
# 3. data-structure consistency fuzz
# --------------------------------------------------------------------------

def test_criterion_3_state_fuzz():
    mismatches = 0
    comparisons = 0
    for n in (4, 8, 16):
        inst = plse.generate_qc(n, 0.4, n)
        mis = plse.transform(inst)
        st = SolutionState(mis)
        rng = random.Random(n)
        for step in range(1, 10_001):
            if st.free_count and (st.sol_count == 0 or rng.random() < 0.55):
                st.insert(rng.choice(st.free_ids()))
            elif st.sol_count:
                st.remove(rng.choice(st.solution_ids()))
            if step % 100 == 0:
                comparisons += 1
                if not states_equivalent(
                    st, rebuild_from_scratch(mis, st.solution_ids())
                ):
                    mismatches += 1
    ok = mismatches == 0 and comparisons == 300
    report(3, ok, f"30000 ops, {comparisons} rebuild comparisons, {mismatches} mismatches")
    assert ok


# --------------------------------------------------------------------------
# 4. matching correctness against the reference matcher
# --------------------------------------------------------------------------

def test_criterion_4_matching():
    rng = random.Random(2024)
    mismatches = 0
    for _ in range(500):
        nl = rng.randint(1, 60)
        nr = rng.randint(1, 60)
        density = rng.choice([0.02, 0.05, 0.12, 0.3, 0.8])
        edges = tuple(
            (l, r, l * 64 + r)
            for l in range(nl)
            for r in range(nr)
            if rng.random() < density
        )
        g = BipartiteGraph(nl, nr, edges)
        m = hopcroft_karp(g)
        if len(m) != oracle.reference_matching(g):
            mismatches += 1
        if len({l for l, _, _ in m}) != len(m) or len({r for _, r, _ in m}) != len(m):
            mismatches += 1
    ok = mismatches == 0
    report(4, ok, f"500 random graphs <= 60+60, {mismatches} mismatches")
    assert ok


# --------------------------------------------------------------------------
# 5. Trellis generalizes (1,n^2)- and (2,n^2)-swap
# --------------------------------------------------------------------------

def test_criterion_5_generalization():
    rng = random.Random(99)
    events = 0
    violations = 0
    trial = 0
    while events < 200 and trial < 3000:
        trial += 1
        n = rng.choice([4, 5, 6])
        r = rng.choice([0.2, 0.3, 0.4])
        inst, mis, st = make_maximal_state(n, r, 50_000 + trial)
        if mis.node_count == 0:
            continue
        if search_swap1(st) is not None:
            events += 1
            if search_trellis(st) is None:
                violations += 1
        drive(st, [fast_swap1])
        if search_swap2(st) is not None:
            events += 1
            if search_trellis(st) is None:
                violations += 1
    ok = violations == 0 and events >= 200
    report(5, ok, f"{events} improving swap1/swap2 states, {violations} trellis misses")
    assert ok


# --------------------------------------------------------------------------
# 6. desk-scale reproduction of the benchmark improvement level
# --------------------------------------------------------------------------

@pytest.mark.slow
def test_criterion_6_benchmark_improvement():
    tr_impr = []
    tr_final = []
    l1_final = []
    for seed in range(1, 11):
        inst = plse.generate_qc(40, 0.6, seed)
        mis = plse.transform(inst)
        _, st_tr = ils.run(mis, ils.IlsConfig(LsLevel.TR, 30.0, seed=seed))
        _, st_l1 = ils.run(mis, ils.IlsConfig(LsLevel.L1, 30.0, seed=seed))
        tr_impr.append(st_tr.improvement)
        tr_final.append(st_tr.best_size)
        l1_final.append(st_l1.best_size)
    mean_impr = sum(tr_impr) / len(tr_impr)
    mean_tr = sum(tr_final) / len(tr_final)
    mean_l1 = sum(l1_final) / len(l1_final)
    ok = mean_impr >= 14.0 and mean_tr >= mean_l1
    report(
        6,
        ok,
        f"n=40 r=0.6 x10 @30s: Tr-ILS mean improvement {mean_impr:.2f} (>=14), "
        f"Tr-ILS final {mean_tr:.2f} vs 1-ILS final {mean_l1:.2f}",
    )
    assert ok


# --------------------------------------------------------------------------
# 7. QWH completion rate
# --------------------------------------------------------------------------

@pytest.mark.slow
def test_criterion_7_qwh_completion():
    runs = 0
    completed = 0
    for i, r in enumerate((0.4, 0.5, 0.6, 0.7, 0.8)):
        for j in range(4):
            seed = 100 + 10 * i + j
            inst = plse.generate_qwh(30, r, seed)
            mis = plse.transform(inst)
            _, stats = ils.run(mis, ils.IlsConfig(LsLevel.TR, 30.0, seed=seed))
            runs += 1
            completed += stats.best_size == 30 * 30 - inst.cell_count
    rate = completed / runs
    ok = runs == 20 and rate >= 0.6
    report(7, ok, f"QWH n=30, 20 runs @30s: {completed}/{runs} completed ({rate:.0%}, >=60%)")
    assert ok


# --------------------------------------------------------------------------
# 8. first-LS improvement ordering
# --------------------------------------------------------------------------

@pytest.mark.slow
def test_criterion_8_first_ls_ordering():
    levels = (LsLevel.L1, LsLevel.L2, LsLevel.TR, LsLevel.L3)
    sums = {lv: 0.0 for lv in levels}
    count = 50
    for seed in range(count):
        inst = plse.generate_qc(60, 0.6, 4200 + seed)
        mis = plse.transform(inst)
        base = ils.greedy_init(mis, random.Random(seed))
        for lv in levels:
            st = base.copy()
            res = local_search(st, lv, random.Random(seed), fast=True)
            sums[lv] += res.final_size - res.initial_size
    means = {lv: sums[lv] / count for lv in levels}
    m1, m2, mtr, m3 = (means[lv] for lv in levels)
    ok = (m3 >= 0.9 * mtr) and (mtr >= 0.9 * m2) and (m2 >= 0.9 * m1)
    report(
        8,
        ok,
        f"first-LS means over {count} QC n=60 r=0.6: "
        f"1-LS {m1:.2f} <= 2-LS {m2:.2f} <= Tr-LS {mtr:.2f} <= 3-LS {m3:.2f} "
        f"(10% slack per step)",
    )
    assert ok


# --------------------------------------------------------------------------
# 9. empirical complexity smoke test
# --------------------------------------------------------------------------

def _one_maximal_state(n: int, seed: int) -> SolutionState:
    inst = plse.generate_qwh(n, 0.5, seed)
    mis = plse.transform(inst)
    st = SolutionState(mis)
    maximalize(st, random.Random(seed))
    drive(st, [fast_swap1])
    return st


def test_criterion_9_complexity_smoke():
    # (a) full swap1 scans on 1-maximal states scale at most ~quadratically
    sizes = (20, 40, 80)
    times = []
    for n in sizes:
        st = _one_maximal_state(n, n)
        assert fast_swap1(st) is None  # scans the whole solution section
        reps = 300
        t0 = time.perf_counter()
        for _ in range(reps):
            K.swap1_move(*st._args())
        times.append((time.perf_counter() - t0) / reps)
    logs_n = [math.log(n) for n in sizes]
    logs_t = [math.log(t) for t in times]
    slope = np.polyfit(logs_n, logs_t, 1)[0]

    # (b) single Tr-LS runs at n=60 stay far below the 50 ms ceiling
    inst = plse.generate_qc(60, 0.6, 7)
    mis = plse.transform(inst)
    _, stats = ils.run(mis, ils.IlsConfig(LsLevel.TR, 3.0, seed=7))
    mean_ls_ms = stats.ls_time_ms_mean

    ok = slope <= 2.4 and mean_ls_ms < 50.0
    report(
        9,
        ok,
        f"swap1 scan times {['%.1fus' % (t * 1e6) for t in times]} fit exponent "
        f"{slope:.2f} (<=2.4); Tr-LS mean at n=60: {mean_ls_ms:.3f} ms (<50)",
    )
    assert ok
