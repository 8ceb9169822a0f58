"""Built-in correctness checks: worked examples plus a randomized
differential suite comparing every engine against the brute-force oracle.
"""

from __future__ import annotations

import random
import sys
import time
from typing import IO, Sequence

from . import bitstate
from .matcher import MODES, brute_count, count_with_engine, scan_count
from .trie import build_tables

_ENGINES = ("mp-trie", "mp-concat", "std-trie", "std-concat")


def random_instance(
    rng: random.Random,
    *,
    max_n: int = 300,
    max_w: int = 30,
    max_q: int = 5,
    max_plen: int = 6,
    alphabet_range: tuple[int, int] = (2, 8),
):
    """One random (text, patterns, w) instance.

    Sizes are drawn so that degenerate shapes appear regularly: windows
    larger than the text, patterns longer than the window, single-byte
    texts and patterns, duplicate patterns.
    """
    alpha = rng.randint(*alphabet_range)
    n = rng.randint(0, max_n)
    w = rng.randint(1, max_w)
    q = rng.randint(1, max_q)
    patterns = []
    for _ in range(q):
        if patterns and rng.random() < 0.10:
            patterns.append(rng.choice(patterns))  # duplicate
        else:
            plen = rng.randint(1, max_plen)
            patterns.append(bytes(rng.randrange(alpha) for _ in range(plen)))
    text = bytes(rng.randrange(alpha) for _ in range(n))
    return text, patterns, w


def check_instance(text: bytes, patterns: Sequence[bytes], w: int) -> list[str]:
    """Differential check of all engines in all modes; returns mismatches."""
    ref = brute_count(text, patterns, w, mode="both")
    problems = []
    for engine in _ENGINES:
        for mode in MODES:
            got = count_with_engine(engine, text, patterns, w, mode)
            if got.windows_total != ref.windows_total:
                problems.append(
                    f"{engine}/{mode}: windows_total {got.windows_total} != {ref.windows_total}"
                )
            if mode in ("all", "both") and got.c_all != ref.c_all:
                problems.append(f"{engine}/{mode}: c_all {got.c_all} != {ref.c_all}")
            if mode in ("each", "both") and got.c_each != ref.c_each:
                problems.append(f"{engine}/{mode}: c_each {got.c_each} != {ref.c_each}")
    return problems


def check_width_independence(
    text: bytes, patterns: Sequence[bytes], w: int, limb_width: int
) -> list[str]:
    """Packed engine, explicit limbs vs single integer: counts must match."""
    problems = []
    for merged in (True, False):
        tables = build_tables(patterns, merge_prefixes=merged)
        base = scan_count(text, tables, w, mode="both")
        limbed = scan_count(text, tables, w, mode="both", limb_width=limb_width)
        if base != limbed:
            layout = "trie" if merged else "concat"
            problems.append(
                f"mp-{layout} limb_width={limb_width}: {limbed} != {base}"
            )
    return problems


def _worked_example_checks() -> list[tuple[str, bool, str]]:
    """Fixed checks with hand-verifiable numbers (see the test suite)."""
    checks = []

    tables = build_tables([b"tu", b"tue", b"tutu"])
    ok = (
        tables.tr == b"tuetu"
        and tables.pr == (0, 1, 2, 2, 4)
        and tables.f == (2, 3, 5)
    )
    checks.append(("trie tables tu/tue/tutu", ok, f"tr={tables.tr!r} pr={tables.pr} f={tables.f}"))

    om = bitstate.compute_omega(13)
    checks.append(("counter width for w=13", om == 4, f"omega={om}"))

    masks = bitstate.build_masks(tables, 13)
    state = bitstate.encode([2, 5, 15, 5, 15], masks)
    nxt, overflow = bitstate.step_trace(state, ord("t"), masks)
    decoded = bitstate.decode(nxt, masks)
    ok = decoded == (1, 6, 15, 6, 15)
    rendering = bitstate.render_state(nxt, masks)
    checks.append(
        (
            "transition (2,5,inf,5,inf) --t--> (1,6,inf,6,inf)",
            ok,
            f"state={rendering} overflow_lanes={overflow.to_int():#x}",
        )
    )

    text = b"dans ville il y a vie"
    c_vile = count_with_engine("mp-trie", text, [b"vile"], 5, "all").c_all
    c_vie = count_with_engine("mp-trie", text, [b"vie"], 5, "all").c_all
    c_vile4 = count_with_engine("mp-trie", text, [b"vile"], 4, "all").c_all
    ok = (c_vile, c_vie, c_vile4) == (1, 2, 0)
    checks.append(
        (
            "window counts on 'dans ville il y a vie'",
            ok,
            f"vile/w5={c_vile} vie/w5={c_vie} vile/w4={c_vile4}",
        )
    )
    return checks


def run_selftest(
    instances: int = 1000, seed: int = 20240811, stream: IO[str] | None = None
) -> bool:
    """Run everything; print one line per check; True if all passed."""
    out = stream if stream is not None else sys.stdout
    failed = 0

    for name, ok, detail in _worked_example_checks():
        print(f"[{'pass' if ok else 'FAIL'}] {name}: {detail}", file=out)
        failed += 0 if ok else 1

    rng = random.Random(seed)
    t0 = time.perf_counter()
    mismatches = 0
    for i in range(instances):
        text, patterns, w = random_instance(rng, max_n=120)
        problems = check_instance(text, patterns, w)
        if i % 10 == 0:
            problems += check_width_independence(
                text, patterns, w, limb_width=rng.choice((3, 7, 8, 16))
            )
        if problems:
            mismatches += 1
            for p in problems[:5]:
                print(
                    f"[FAIL] instance {i} (w={w}, patterns={patterns!r}): {p}",
                    file=out,
                )
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0
    print(
        f"[{'pass' if ok else 'FAIL'}] randomized differential suite: "
        f"{instances} instances, {mismatches} mismatching, {elapsed:.1f}s",
        file=out,
    )
    failed += 0 if ok else 1
    return failed == 0
