"""Window-count engines: packed bit-parallel, standard per-node, brute force.

All engines answer the same question about a byte text, a pattern set and
a window size w: out of the n-w+1 windows of length w, how many contain a
given pattern as an in-order (not necessarily contiguous) subsequence, and
how many contain all patterns at once.  A window is charged to its end
position, so counting starts once w bytes have been consumed.

Engines:

* scan_count      -- packed-lane automaton, a few word operations per byte
                     regardless of how many patterns there are.
* std_scan_count  -- classic per-node table of latest viable start
                     positions, touching every node labelled by the byte.
* brute_count     -- per-window greedy subsequence test; the definitional
                     oracle the other two are checked against.

Every engine consumes the text strictly left to right, one byte at a time,
and keeps state whose size depends only on the pattern set and w, so texts
may be streamed.  Inputs may be any bytes-like object or an iterable of
byte values (the brute engine needs a materialized bytes object).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import islice
from operator import itemgetter
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import bitstate
from .bitstate import MaskSet, build_masks
from .trie import TrieTables, build_tables, normalize_patterns

MODES = ("all", "each", "both")
ENGINES = ("mp-trie", "mp-concat", "std-trie", "std-concat", "brute")


@dataclass(frozen=True)
class CountReport:
    """Counting result of one scan.

    windows_total is n-w+1 (0 when the text is shorter than the window).
    c_all counts windows containing every pattern; c_each counts, per
    input pattern, the windows containing it.  Fields not requested by the
    scan mode are None.
    """

    windows_total: int
    c_all: int | None = None
    c_each: tuple[int, ...] | None = None


class FeedResult(NamedTuple):
    """Per-byte containment flags from a streaming scan.

    valid is False while fewer than w bytes have been consumed; the flags
    refer to the window ending at the byte just fed.
    """

    valid: bool
    all_contained: bool
    each: tuple[bool, ...]


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _check_window(w: int) -> int:
    if not isinstance(w, int) or isinstance(w, bool) or w < 1:
        raise ValueError(f"window size must be an integer >= 1, got {w!r}")
    return w


def _text_len(text) -> int | None:
    if isinstance(text, str):
        raise TypeError("text must be bytes-like, not str (encode it first)")
    try:
        return len(text)
    except TypeError:
        return None


# ---------------------------------------------------------------------------
# packed bit-parallel engine
# ---------------------------------------------------------------------------


class _Plan:
    """Per-(tables, w) compilation of the packed transition.

    flat is set when every byte needs at most one shift-and-mask term; the
    scan loop is then a fixed straight-line expression.  Masks that cover
    only path-start lanes are dropped from both plans: the block shift
    feeds those lanes zeros anyway, so their term is always zero and the
    restart is already handled by the lane's absence from the keep mask.
    """

    __slots__ = (
        "width", "omega", "e1", "e2", "i0", "cadd", "e2f",
        "flat", "general", "fshifts", "slots", "masks",
    )

    def __init__(self, tables: TrieTables, w: int):
        masks = build_masks(tables, w)
        om = masks.omega
        big = om + 1
        self.masks = masks
        self.width = masks.width
        self.omega = om
        self.e1 = masks.e1
        self.e2 = masks.e2
        self.i0 = masks.i0

        nonroot: set[tuple[int, int]] = set()
        for i in range(1, tables.k + 1):
            parent = tables.pr[i - 1]
            if parent:
                nonroot.add((tables.tr[i - 1], i - parent))
        effective = {
            sigma: tuple(
                (j * big, m) for j, m in pairs if (sigma, j) in nonroot
            )
            for sigma, pairs in masks.first_type.items()
        }

        self.general: list[tuple[int, tuple[tuple[int, int], ...]] | None]
        self.general = [None] * 256
        for sigma, pairs in effective.items():
            self.general[sigma] = (masks.second_type[sigma], pairs)

        if all(len(pairs) <= 1 for pairs in effective.values()):
            flat = [(masks.n_other, 0, 0)] * 256
            for sigma, pairs in effective.items():
                if pairs:
                    flat[sigma] = (masks.second_type[sigma], pairs[0][0], pairs[0][1])
                else:
                    flat[sigma] = (masks.second_type[sigma], 0, 0)
            self.flat: list[tuple[int, int, int]] | None = flat
        else:
            self.flat = None

        # window test, all lanes at once: adding 2**omega - 1 - w into a
        # final small block sets its overflow bit exactly when the counter
        # exceeds w, so "(state + cadd) & e2f == 0" means every pattern is
        # in the current window
        uniq = tuple(dict.fromkeys(masks.final_offsets))
        gap = (1 << om) - 1 - w
        self.cadd = 0
        self.e2f = 0
        for off in uniq:
            self.cadd |= gap << off
            self.e2f |= 1 << (off + om)
        self.fshifts = tuple(off + om for off in uniq)
        index = {off: u for u, off in enumerate(uniq)}
        self.slots = tuple(index[off] for off in masks.final_offsets)


@lru_cache(maxsize=256)
def _plan_for(tables: TrieTables, w: int) -> _Plan:
    return _Plan(tables, w)


def _mp_count_all_flat(data, p: _Plan, w: int) -> int:
    plans = p.flat
    e1 = p.e1
    e2 = p.e2
    om = p.omega
    cadd = p.cadd
    e2f = p.e2f
    L = p.i0
    it = iter(data)
    for b in islice(it, w - 1):
        N, sh, M = plans[b]
        T = ((L << sh) & M) + (L & N) + e1
        L = T - ((T & e2) >> om)
    c = 0
    for b in it:
        N, sh, M = plans[b]
        T = ((L << sh) & M) + (L & N) + e1
        L = T - ((T & e2) >> om)
        if not ((L + cadd) & e2f):
            c += 1
    return c


def _mp_count_all_general(data, p: _Plan, w: int) -> int:
    plans = p.general
    e1 = p.e1
    e2 = p.e2
    om = p.omega
    cadd = p.cadd
    e2f = p.e2f
    L = p.i0
    it = iter(data)
    for b in islice(it, w - 1):
        plan = plans[b]
        if plan is None:
            T = L + e1
        else:
            N, pairs = plan
            T = (L & N) + e1
            for sh, M in pairs:
                T += (L << sh) & M
        L = T - ((T & e2) >> om)
    c = 0
    for b in it:
        plan = plans[b]
        if plan is None:
            T = L + e1
        else:
            N, pairs = plan
            T = (L & N) + e1
            for sh, M in pairs:
                T += (L << sh) & M
        L = T - ((T & e2) >> om)
        if not ((L + cadd) & e2f):
            c += 1
    return c


def _mp_count_full(data, p: _Plan, w: int) -> tuple[int, int, list[int]]:
    """Generic loop: windows seen, all-patterns count, per-lane miss counts."""
    plans = p.general
    e1 = p.e1
    e2 = p.e2
    om = p.omega
    cadd = p.cadd
    e2f = p.e2f
    fshifts = p.fshifts
    L = p.i0
    it = iter(data)
    for b in islice(it, w - 1):
        plan = plans[b]
        if plan is None:
            T = L + e1
        else:
            N, pairs = plan
            T = (L & N) + e1
            for sh, M in pairs:
                T += (L << sh) & M
        L = T - ((T & e2) >> om)
    wins = 0
    c_all = 0
    missed = [0] * len(fshifts)
    for b in it:
        plan = plans[b]
        if plan is None:
            T = L + e1
        else:
            N, pairs = plan
            T = (L & N) + e1
            for sh, M in pairs:
                T += (L << sh) & M
        L = T - ((T & e2) >> om)
        wins += 1
        v = (L + cadd) & e2f
        if v:
            for u, sh in enumerate(fshifts):
                missed[u] += (v >> sh) & 1
        else:
            c_all += 1
    return wins, c_all, missed


def _mp_count_limbed(
    data, p: _Plan, w: int, limb_width: int
) -> tuple[int, int, list[int]]:
    """Same contract as _mp_count_full, on the explicit-limb representation."""
    masks = p.masks
    om = masks.omega
    thr = masks.threshold
    uniq = tuple(dict.fromkeys(masks.final_offsets))
    state = bitstate.initial_state(masks, limb_width)
    it = iter(data)
    for b in islice(it, w - 1):
        state = bitstate.step(state, b, masks)
    wins = 0
    c_all = 0
    missed = [0] * len(uniq)
    for b in it:
        state = bitstate.step(state, b, masks)
        wins += 1
        ok = True
        for u, off in enumerate(uniq):
            if state.extract_bits(off, om) >= thr:
                missed[u] += 1
                ok = False
        if ok:
            c_all += 1
    return wins, c_all, missed


def scan_count(
    text,
    tables: TrieTables,
    w: int,
    mode: str = "both",
    *,
    limb_width: int | None = None,
) -> CountReport:
    """Count windows with the packed bit-parallel engine.

    ``limb_width`` forces the explicit-limb state representation (mainly
    for verifying that results do not depend on machine word size); the
    default packs the state into one Python integer.
    """
    _check_window(w)
    _check_mode(mode)
    n = _text_len(text)
    p = _plan_for(tables, w)
    if limb_width is not None:
        wins, c_all, missed = _mp_count_limbed(text, p, w, limb_width)
        each = tuple(wins - missed[u] for u in p.slots)
        return _make_report(mode, wins, c_all, each)
    if mode == "all" and n is not None:
        fast = _mp_count_all_flat if p.flat is not None else _mp_count_all_general
        c = fast(text, p, w)
        return CountReport(windows_total=max(0, n - w + 1), c_all=c)
    wins, c_all, missed = _mp_count_full(text, p, w)
    each = tuple(wins - missed[u] for u in p.slots)
    return _make_report(mode, wins, c_all, each)


def _make_report(
    mode: str, wins: int, c_all: int, each: tuple[int, ...]
) -> CountReport:
    if mode == "all":
        return CountReport(windows_total=wins, c_all=c_all)
    if mode == "each":
        return CountReport(windows_total=wins, c_each=each)
    return CountReport(windows_total=wins, c_all=c_all, c_each=each)


# ---------------------------------------------------------------------------
# standard per-node engine
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _std_compiled(tables: TrieTables):
    """Byte buckets of (node, parent) in descending node order, plus finals.

    Descending order matters: a node must read its parent's value from
    before this byte was applied, and parents have smaller indices.
    """
    per: dict[int, list[tuple[int, int]]] = {}
    for i in range(tables.k, 0, -1):
        per.setdefault(tables.tr[i - 1], []).append((i, tables.pr[i - 1]))
    buckets = tuple(tuple(per.get(b, ())) for b in range(256))
    finals = tuple(dict.fromkeys(tables.f))
    index = {fn: u for u, fn in enumerate(finals)}
    slots = tuple(index[fn] for fn in tables.f)
    return buckets, finals, slots


def _std_count_all(data, buckets, finals, k: int, w: int) -> int:
    # d[i]: latest start s such that node i's path word is a subsequence of
    # the text from s to the current position (0 = none); d[0] doubles as
    # the virtual parent of path starts and tracks the current position
    d = [0] * (k + 1)
    m = 0
    it = iter(data)
    for b in islice(it, w - 1):
        m += 1
        d[0] = m
        for i, parent in buckets[b]:
            d[i] = d[parent]
    c = 0
    thr = 1
    if len(finals) > 1:
        get_finals = itemgetter(*finals)
        for b in it:
            m += 1
            d[0] = m
            for i, parent in buckets[b]:
                d[i] = d[parent]
            if min(get_finals(d)) >= thr:
                c += 1
            thr += 1
    else:
        fn = finals[0]
        for b in it:
            m += 1
            d[0] = m
            for i, parent in buckets[b]:
                d[i] = d[parent]
            if d[fn] >= thr:
                c += 1
            thr += 1
    return c


def _std_count_full(data, buckets, finals, k: int, w: int):
    d = [0] * (k + 1)
    m = 0
    it = iter(data)
    for b in islice(it, w - 1):
        m += 1
        d[0] = m
        for i, parent in buckets[b]:
            d[i] = d[parent]
    wins = 0
    c_all = 0
    sat = [0] * len(finals)
    thr = 1
    for b in it:
        m += 1
        d[0] = m
        for i, parent in buckets[b]:
            d[i] = d[parent]
        wins += 1
        ok = True
        for u, fn in enumerate(finals):
            if d[fn] >= thr:
                sat[u] += 1
            else:
                ok = False
        if ok:
            c_all += 1
        thr += 1
    return wins, c_all, sat


def std_scan_count(text, tables: TrieTables, w: int, mode: str = "both") -> CountReport:
    """Count windows with the standard per-node latest-start engine."""
    _check_window(w)
    _check_mode(mode)
    n = _text_len(text)
    buckets, finals, slots = _std_compiled(tables)
    if mode == "all" and n is not None:
        c = _std_count_all(text, buckets, finals, tables.k, w)
        return CountReport(windows_total=max(0, n - w + 1), c_all=c)
    wins, c_all, sat = _std_count_full(text, buckets, finals, tables.k, w)
    each = tuple(sat[u] for u in slots)
    return _make_report(mode, wins, c_all, each)


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------


def is_subsequence(window: bytes, pattern: bytes) -> bool:
    """Greedy in-order subsequence test."""
    pos = 0
    for byte in pattern:
        pos = window.find(byte, pos) + 1
        if not pos:
            return False
    return True


def brute_count(
    text, patterns: Sequence[bytes | str], w: int, mode: str = "both"
) -> CountReport:
    """Count windows by checking every window against every pattern."""
    _check_window(w)
    _check_mode(mode)
    pats = normalize_patterns(patterns)
    if isinstance(text, str):
        raise TypeError("text must be bytes-like, not str (encode it first)")
    data = bytes(text)
    n = len(data)
    wins = max(0, n - w + 1)
    c_all = 0
    c_each = [0] * len(pats)
    for s in range(wins):
        window = data[s : s + w]
        ok_all = True
        for idx, pat in enumerate(pats):
            if is_subsequence(window, pat):
                c_each[idx] += 1
            else:
                ok_all = False
        if ok_all:
            c_all += 1
    return _make_report(mode, wins, c_all, tuple(c_each))


# ---------------------------------------------------------------------------
# streaming interface
# ---------------------------------------------------------------------------


class ScanState:
    """Incremental scan fed one byte at a time.

    Wraps either engine ("mp" or "std") behind the same feed interface and
    keeps the running counters, so a streaming consumer gets both per-byte
    flags and the final report.  Memory stays proportional to the pattern
    structure, never to the text.
    """

    def __init__(
        self,
        tables: TrieTables,
        w: int,
        engine: str = "mp",
        *,
        limb_width: int | None = None,
    ):
        _check_window(w)
        if engine not in ("mp", "std"):
            raise ValueError(f"engine must be 'mp' or 'std', got {engine!r}")
        self.tables = tables
        self.w = w
        self.engine = engine
        self.position = 0
        self._c_all = 0
        self._plan = _plan_for(tables, w)
        q = len(self._plan.slots)
        self._sat = [0] * len(self._plan.fshifts)
        self._q = q
        self._limb = limb_width
        if engine == "mp":
            if limb_width is None:
                self._L = self._plan.i0
            else:
                self._state = bitstate.initial_state(self._plan.masks, limb_width)
        else:
            self._buckets, self._finals, self._slots = _std_compiled(tables)
            self._d = [0] * (tables.k + 1)

    def feed(self, sigma: int) -> FeedResult:
        """Consume one byte and report containment for the window ending here."""
        self.position += 1
        if self.engine == "mp":
            flags_u = self._feed_mp(sigma)
            slots = self._plan.slots
        else:
            flags_u = self._feed_std(sigma)
            slots = self._slots
        valid = self.position >= self.w
        if not valid:
            return FeedResult(False, False, (False,) * self._q)
        ok_all = all(flags_u)
        if ok_all:
            self._c_all += 1
        sat = self._sat
        for u, flag in enumerate(flags_u):
            if flag:
                sat[u] += 1
        return FeedResult(True, ok_all, tuple(flags_u[u] for u in slots))

    def _feed_mp(self, sigma: int) -> list[bool]:
        p = self._plan
        if self._limb is not None:
            masks = p.masks
            self._state = bitstate.step(self._state, sigma, masks)
            om = masks.omega
            thr = masks.threshold
            uniq = dict.fromkeys(masks.final_offsets)
            return [self._state.extract_bits(off, om) < thr for off in uniq]
        L = self._L
        plan = p.general[sigma]
        if plan is None:
            T = L + p.e1
        else:
            N, pairs = plan
            T = (L & N) + p.e1
            for sh, M in pairs:
                T += (L << sh) & M
        L = T - ((T & p.e2) >> p.omega)
        self._L = L
        v = (L + p.cadd) & p.e2f
        return [not ((v >> sh) & 1) for sh in p.fshifts]

    def _feed_std(self, sigma: int) -> list[bool]:
        d = self._d
        d[0] = self.position
        for i, parent in self._buckets[sigma]:
            d[i] = d[parent]
        thr = self.position - self.w + 1
        return [d[fn] >= thr for fn in self._finals]

    def report(self, mode: str = "both") -> CountReport:
        """Counters accumulated so far."""
        _check_mode(mode)
        wins = max(0, self.position - self.w + 1)
        slots = self._plan.slots if self.engine == "mp" else self._slots
        each = tuple(self._sat[u] for u in slots)
        return _make_report(mode, wins, self._c_all, each)


def feed(scan: ScanState, sigma: int) -> FeedResult:
    """Function form of :meth:`ScanState.feed`."""
    return scan.feed(sigma)


# ---------------------------------------------------------------------------
# engine dispatch
# ---------------------------------------------------------------------------


def count_with_engine(
    engine: str,
    text,
    patterns: Sequence[bytes | str],
    w: int,
    mode: str = "both",
    *,
    limb_width: int | None = None,
) -> CountReport:
    """Run any named engine on raw patterns.

    mp-trie / std-trie share pattern prefixes; mp-concat / std-concat give
    every pattern its own chain; brute is the oracle.
    """
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    pats = normalize_patterns(patterns)
    if engine == "brute":
        return brute_count(text, pats, w, mode)
    tables = build_tables(pats, merge_prefixes=engine.endswith("-trie"))
    if engine.startswith("mp-"):
        return scan_count(text, tables, w, mode, limb_width=limb_width)
    return std_scan_count(text, tables, w, mode)
