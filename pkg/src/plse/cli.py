"""Command-line entry points: gen, solve, verify, bench."""

from __future__ import annotations

import argparse
import csv
import os
import re
import sys
import time
from pathlib import Path


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plse",
        description="Partial Latin square extension solver and instance tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a random instance")
    p_gen.add_argument("--scheme", choices=["qc", "qwh"], required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--r", type=float, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("-o", "--output", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument(
        "--alg",
        choices=["ls1", "ls2", "ls3", "tr-ls", "ils1", "ils2", "ils3", "tr-ils"],
        default="tr-ils",
    )
    p_solve.add_argument("--time-limit", type=float, default=30.0)
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("input")
    p_solve.add_argument("-o", "--output", default=None)
    p_solve.add_argument("--stats", default=None)

    p_verify = sub.add_parser("verify", help="check a solution against an instance")
    p_verify.add_argument("instance")
    p_verify.add_argument("solution")

    p_bench = sub.add_parser("bench", help="run a benchmark grid and write CSV")
    p_bench.add_argument("--dir", required=True)
    p_bench.add_argument("--alg", required=True, help="comma-separated algorithm list")
    p_bench.add_argument("--time-limit", type=float, default=30.0)
    p_bench.add_argument("--seeds", required=True, help="comma-separated seed list")
    p_bench.add_argument("--csv", required=True)
    p_bench.add_argument("--checkpoints", default="5,10,30")

    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "solve":
            return cmd_solve(args)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_bench(args)
    except BrokenPipeError:
        return 1


def cmd_gen(args) -> int:
    from .core import GenScheme, GenerationError, serialize_instance

    try:
        inst = GenScheme(args.scheme, args.r, args.seed).build(args.n)
    except (GenerationError, ValueError) as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return 1
    Path(args.output).write_text(serialize_instance(inst))
    print(inst.cell_count)
    return 0


_LEVELS = {"1": "L1", "2": "L2", "3": "L3", "tr": "TR"}


def _parse_alg(name: str):
    from .neighborhoods import LsLevel

    if name.startswith("ils"):
        return LsLevel[_LEVELS[name[3:]]], True
    if name.endswith("-ils"):
        return LsLevel[_LEVELS[name[:-4]]], True
    if name.startswith("ls"):
        return LsLevel[_LEVELS[name[2:]]], False
    return LsLevel[_LEVELS[name[:-3]]], False


def _run_algorithm(inst, alg: str, time_limit: float, seed: int):
    """Returns (solution triples, stats-like record)."""
    import random

    from . import ils
    from .mis import transform
    from .neighborhoods import local_search

    level, iterated = _parse_alg(alg)
    mis = transform(inst)
    if iterated:
        return ils.run(mis, ils.IlsConfig(level, time_limit, seed))
    t0 = time.perf_counter()
    rng = random.Random(seed)
    state = ils.greedy_init(mis, rng)
    init = state.sol_count
    ls = local_search(state, level, rng, fast=True)
    elapsed = (time.perf_counter() - t0) * 1000.0
    stats = ils.IlsStats(
        init, state.sol_count, 1, ls.final_size - init,
        [(0.0, init), (elapsed, state.sol_count)], elapsed, elapsed,
    )
    return {mis.triple_of(v) for v in state.solution_ids()}, stats


def cmd_solve(args) -> int:
    from .core import PlsError, PlsInstance, parse_instance, serialize_instance
    from .mis import validate_extension

    try:
        inst = parse_instance(Path(args.input).read_text())
    except (OSError, PlsError) as exc:
        print(f"cannot read instance: {exc}", file=sys.stderr)
        return 1
    triples, stats = _run_algorithm(inst, args.alg, args.time_limit, args.seed)
    if not validate_extension(inst, triples):
        print("internal error: solver produced an invalid extension", file=sys.stderr)
        return 2
    merged = PlsInstance(inst.n, frozenset(inst.triples | triples))
    optimal = merged.is_complete()
    if args.output:
        Path(args.output).write_text(serialize_instance(merged))
    if args.stats:
        Path(args.stats).write_text(_stats_document(args, inst, stats, optimal))
    print(
        f"given {inst.cell_count} init {stats.initial_size} "
        f"final {stats.best_size} optimal {int(optimal)}"
    )
    return 0


def _stats_document(args, inst, stats, optimal: bool) -> str:
    n = inst.n
    m = re.search(r"(qwh|qc)", Path(args.input).stem, re.IGNORECASE)
    lines = [
        f"instance: {args.input}",
        f"n: {n}",
        f"r: {inst.cell_count / (n * n):.6f}",
        f"scheme: {m.group(1).lower() if m else 'unknown'}",
        f"alg: {args.alg}",
        f"seed: {args.seed}",
        f"time_limit_s: {args.time_limit}",
        f"given: {inst.cell_count}",
        f"init: {stats.initial_size}",
        f"final: {stats.best_size}",
        f"iters: {stats.iterations}",
        f"elapsed_ms: {stats.elapsed_ms:.3f}",
        f"ls_time_ms_mean: {stats.ls_time_ms_mean:.3f}",
        f"opt: {int(optimal)}",
        "series:",
    ]
    lines.extend(f"{ms:.3f} {size}" for ms, size in stats.series)
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    from .core import PlsError, parse_instance

    try:
        inst = parse_instance(Path(args.instance).read_text())
    except (OSError, PlsError) as exc:
        print(f"instance invalid: {exc}", file=sys.stderr)
        return 1
    try:
        sol = parse_instance(Path(args.solution).read_text())
    except (OSError, PlsError) as exc:
        print(f"solution invalid: {exc}", file=sys.stderr)
        return 1
    if sol.n != inst.n:
        print(f"grid length mismatch: instance {inst.n}, solution {sol.n}", file=sys.stderr)
        return 1
    missing = sorted(inst.triples - sol.triples)
    if missing:
        r, c, s = missing[0]
        print(
            f"solution drops the given assignment of symbol {s} at cell ({r},{c})",
            file=sys.stderr,
        )
        return 1
    print(f"ok: {sol.cell_count} filled cells ({sol.cell_count - inst.cell_count} added)")
    return 0


def _checkpoint_value(series, limit_ms: float) -> int:
    best = series[0][1]
    for ms, size in series:
        if ms <= limit_ms:
            best = max(best, size)
    return best


def _bench_one(task):
    path, alg, seed, time_limit, checkpoints = task
    from .core import parse_instance

    inst = parse_instance(Path(path).read_text())
    n = inst.n
    r = inst.cell_count / (n * n)
    m = re.search(r"(qwh|qc)", Path(path).stem, re.IGNORECASE)
    scheme = m.group(1).lower() if m else "unknown"
    triples, stats = _run_algorithm(inst, alg, time_limit, seed)
    merged_size = inst.cell_count + len(triples)
    row = {
        "instance": Path(path).name,
        "n": n,
        "r": f"{r:.4f}",
        "scheme": scheme,
        "alg": alg,
        "seed": seed,
        "given": inst.cell_count,
        "init": stats.initial_size,
        "final": stats.best_size,
        "iters": stats.iterations,
        "elapsed_ms": f"{stats.elapsed_ms:.1f}",
        "opt": int(merged_size == n * n),
    }
    for ck in checkpoints:
        row[f"ckpt_{ck}s"] = _checkpoint_value(stats.series, ck * 1000.0)
    return row


def cmd_bench(args) -> int:
    from concurrent.futures import ProcessPoolExecutor

    paths = sorted(str(p) for p in Path(args.dir).glob("*.pls"))
    if not paths:
        print(f"no .pls files under {args.dir}", file=sys.stderr)
        return 1
    algs = [a.strip() for a in args.alg.split(",") if a.strip()]
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    checkpoints = [int(c) for c in args.checkpoints.split(",") if c.strip()]
    tasks = [
        (path, alg, seed, args.time_limit, checkpoints)
        for path in paths
        for alg in algs
        for seed in seeds
    ]
    ckpt_cols = [f"ckpt_{c}s" for c in checkpoints]
    header = [
        "instance", "n", "r", "scheme", "alg", "seed", "given", "init",
        "final", "iters", "elapsed_ms", "opt", *ckpt_cols,
    ]
    workers = int(os.environ.get("PLSE_THREADS", os.cpu_count() or 1))
    workers = max(1, min(workers, len(tasks)))
    rows = []
    if workers == 1:
        for task in tasks:
            rows.append(_bench_row_safe(task))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_bench_row_safe, tasks))

    aggregates = _aggregate(rows, ckpt_cols)
    with open(args.csv, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=header)
        writer.writeheader()
        for row in rows + aggregates:
            writer.writerow(row)
    print(f"{len(rows)} runs + {len(aggregates)} aggregate rows -> {args.csv}")
    return 0


def _bench_row_safe(task):
    try:
        return _bench_one(task)
    except Exception as exc:  # record the failure, keep the run going
        path, alg, seed, _limit, checkpoints = task
        row = {
            "instance": Path(path).name,
            "n": "",
            "r": "",
            "scheme": "",
            "alg": alg,
            "seed": seed,
            "given": "",
            "init": "",
            "final": "",
            "iters": "",
            "elapsed_ms": "",
            "opt": f"error: {exc}",
        }
        for ck in checkpoints:
            row[f"ckpt_{ck}s"] = ""
        return row


def _aggregate(rows, ckpt_cols):
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        if row["final"] == "":
            continue
        groups.setdefault((row["n"], row["r"], row["alg"]), []).append(row)
    out = []
    for (n, r, alg), members in sorted(groups.items(), key=lambda kv: str(kv[0])):
        agg = {
            "instance": "aggregate",
            "n": n,
            "r": r,
            "scheme": members[0]["scheme"],
            "alg": alg,
            "seed": "",
            "opt": f"{sum(int(m['opt']) for m in members) / len(members):.2f}",
        }
        for col in ("given", "init", "final", "iters", "elapsed_ms", *ckpt_cols):
            agg[col] = f"{sum(float(m[col]) for m in members) / len(members):.2f}"
        out.append(agg)
    return out


if __name__ == "__main__":
    sys.exit(main())
