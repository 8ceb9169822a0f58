"""Independent reference implementations used as test oracles.

Everything here is deliberately written from the definitions, not from the
library's code paths, so the two can disagree when one of them is wrong.
"""

from itertools import combinations


def subsequence_exhaustive(window: bytes, pattern: bytes) -> bool:
    """In-order subsequence test by trying every index choice (tiny inputs)."""
    positions = range(len(window))
    for combo in combinations(positions, len(pattern)):
        if all(window[i] == p for i, p in zip(combo, pattern)):
            return True
    return False


def shortest_suffix_len_definitional(prefix: bytes, word: bytes) -> int | None:
    """Smallest L such that word is a subsequence of prefix[-L:] (None if none)."""
    for length in range(len(word), len(prefix) + 1):
        window = prefix[len(prefix) - length :]
        pos = 0
        ok = True
        for byte in word:
            pos = window.find(byte, pos) + 1
            if not pos:
                ok = False
                break
        if ok:
            return length
    return None


def shortest_suffix_len(prefix: bytes, word: bytes) -> int | None:
    """Same value as the definitional form, via rightmost greedy matching.

    Matching each word byte as late as possible maximizes the start of the
    embedding, i.e. minimizes the suffix length.
    """
    end = len(prefix)
    for byte in reversed(word):
        end = prefix.rfind(byte, 0, end)
        if end < 0:
            return None
    return len(prefix) - end


def mask_blocks(mask: int, omega: int, k: int) -> set[int]:
    """1-based block numbers whose low-omega field is fully set in mask."""
    big = omega + 1
    small = (1 << omega) - 1
    out = set()
    for i in range(1, k + 1):
        val = (mask >> (big * (i - 1))) & ((1 << big) - 1)
        if val == small:
            out.add(i)
        elif val:
            raise AssertionError(f"block {i} partially covered: {val:b}")
    return out


class CountingReader:
    """Byte iterator that records how many bytes were handed out."""

    def __init__(self, data: bytes):
        self._it = iter(data)
        self.reads = 0

    def __iter__(self):
        return self

    def __next__(self):
        byte = next(self._it)
        self.reads += 1
        return byte


def window_count_oracle(text: bytes, patterns, w: int):
    """(c_all, c_each) straight from the window definition."""
    n = len(text)
    c_all = 0
    c_each = [0] * len(patterns)
    for start in range(max(0, n - w + 1)):
        window = text[start : start + w]
        flags = []
        for pat in patterns:
            pos = 0
            ok = True
            for byte in pat:
                pos = window.find(byte, pos) + 1
                if not pos:
                    ok = False
                    break
            flags.append(ok)
        for idx, flag in enumerate(flags):
            c_each[idx] += flag
        c_all += all(flags)
    return c_all, tuple(c_each)
