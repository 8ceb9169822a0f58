"""Benchmark harness: seeded corpora, per-engine timings, CSV rows.

A grid of cells (text size, pattern count, pattern length, window size,
alphabet size) is run against the four scanning engines.  Texts and
patterns are generated deterministically from the root seed and the cell
position, every engine is checked to agree on the count before timings
are trusted, and one CSV row is emitted per (engine, cell, repetition).
"""

from __future__ import annotations

import csv
import gc
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import IO, Sequence

import numpy as np

from .matcher import count_with_engine

BENCH_ENGINES = ("mp-trie", "mp-concat", "std-trie", "std-concat")
CSV_HEADER = (
    "engine", "n", "q", "plen_total", "w", "alphabet", "seed", "rep", "c_all", "time_ns",
)


class EngineDisagreement(RuntimeError):
    """Engines returned different counts for the same cell; timings are void."""


@dataclass(frozen=True)
class BenchCell:
    index: int
    n: int
    q: int
    plen: int
    w: int
    alphabet: int
    prefix_len: int


@dataclass(frozen=True)
class BenchRow:
    engine: str
    n: int
    q: int
    plen_total: int
    w: int
    alphabet: int
    seed: int
    rep: int
    c_all: int
    time_ns: int


def make_text(n: int, alphabet: int, rng: np.random.Generator) -> bytes:
    """Uniform i.i.d. bytes over values 0..alphabet-1."""
    if not 1 <= alphabet <= 256:
        raise ValueError("alphabet size must be in 1..256")
    return rng.integers(0, alphabet, size=n, dtype=np.uint8).tobytes()


def make_patterns(
    q: int, plen: int, alphabet: int, prefix_len: int, rng: np.random.Generator
) -> list[bytes]:
    """q patterns of length plen; the first prefix_len bytes are shared.

    prefix_len=0 draws patterns independently; otherwise one common prefix
    is drawn and each pattern gets an independent suffix.  The prefix is
    capped at plen-1 so every pattern keeps at least one free byte.
    """
    if q < 1 or plen < 1:
        raise ValueError("q and plen must be >= 1")
    shared = min(prefix_len, plen - 1)
    prefix = make_text(shared, alphabet, rng)
    return [prefix + make_text(plen - shared, alphabet, rng) for _ in range(q)]


def run_cell(cell: BenchCell, seed: int, reps: int) -> list[BenchRow]:
    """Time every engine on one cell; verify count agreement first."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence([seed, cell.index]))
    patterns = make_patterns(cell.q, cell.plen, cell.alphabet, cell.prefix_len, rng)
    text = make_text(cell.n, cell.alphabet, rng)
    plen_total = sum(len(p) for p in patterns)

    counts = {}
    rows = []
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for engine in BENCH_ENGINES:
            for rep in range(reps):
                t0 = time.perf_counter_ns()
                report = count_with_engine(engine, text, patterns, cell.w, mode="all")
                elapsed = time.perf_counter_ns() - t0
                counts[engine] = report.c_all
                rows.append(
                    BenchRow(
                        engine=engine,
                        n=cell.n,
                        q=cell.q,
                        plen_total=plen_total,
                        w=cell.w,
                        alphabet=cell.alphabet,
                        seed=seed,
                        rep=rep,
                        c_all=report.c_all,
                        time_ns=elapsed,
                    )
                )
    finally:
        if gc_was_enabled:
            gc.enable()

    if len(set(counts.values())) != 1:
        detail = ", ".join(f"{e}={c}" for e, c in sorted(counts.items()))
        raise EngineDisagreement(
            f"count mismatch on cell {cell} (seed {seed}): {detail}"
        )
    return rows


def _run_cell_args(args) -> list[BenchRow]:
    return run_cell(*args)


def run_grid(
    ns: Sequence[int],
    qs: Sequence[int],
    plens: Sequence[int],
    ws: Sequence[int],
    alphabets: Sequence[int],
    seed: int = 1,
    reps: int = 3,
    prefix_len: int = 0,
    workers: int = 1,
) -> list[BenchRow]:
    """Run the full grid; cells may run in parallel worker processes.

    Timing loops inside a cell are always sequential; with workers > 1
    distinct cells time concurrently, which can add scheduling noise.
    Row order is deterministic either way.
    """
    cells = [
        BenchCell(index=i, n=n, q=q, plen=plen, w=w, alphabet=alpha, prefix_len=prefix_len)
        for i, (n, q, plen, w, alpha) in enumerate(product(ns, qs, plens, ws, alphabets))
    ]
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(cells))) as pool:
            per_cell = list(pool.map(_run_cell_args, [(c, seed, reps) for c in cells]))
    else:
        per_cell = [run_cell(c, seed, reps) for c in cells]
    return [row for rows in per_cell for row in rows]


def write_csv(rows: Sequence[BenchRow], out: IO[str]) -> None:
    writer = csv.writer(out)
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            (r.engine, r.n, r.q, r.plen_total, r.w, r.alphabet, r.seed, r.rep, r.c_all, r.time_ns)
        )


def median_times(rows: Sequence[BenchRow]) -> dict[tuple, int]:
    """Median time_ns per (engine, cell-identifying columns)."""
    groups: dict[tuple, list[int]] = {}
    for r in rows:
        key = (r.engine, r.n, r.q, r.plen_total, r.w, r.alphabet)
        groups.setdefault(key, []).append(r.time_ns)
    out = {}
    for key, times in groups.items():
        times.sort()
        out[key] = times[len(times) // 2]
    return out
