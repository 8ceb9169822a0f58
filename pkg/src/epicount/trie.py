"""Flattened trie tables over a set of byte patterns.

A pattern set is compiled into three parallel tables: node labels, parent
links, and one end node per input pattern.  Nodes are numbered from 1 in
creation order; parent index 0 marks the start of a pattern path.  Two
layouts are supported:

* merged -- patterns sharing a prefix share the corresponding nodes,
* concatenated -- every pattern gets an independent chain of fresh nodes.

Both layouts drive the same scanning engines; the merged one is smaller,
the concatenated one mirrors the naive "one chain per pattern" encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def as_pattern_bytes(pattern: bytes | bytearray | memoryview | str) -> bytes:
    """Coerce a single pattern to ``bytes`` (str is encoded as UTF-8)."""
    if isinstance(pattern, str):
        return pattern.encode("utf-8")
    if isinstance(pattern, (bytes, bytearray, memoryview)):
        return bytes(pattern)
    raise TypeError(f"pattern must be bytes-like or str, got {type(pattern).__name__}")


def normalize_patterns(patterns: Iterable[bytes | str]) -> tuple[bytes, ...]:
    """Coerce a pattern collection to a tuple of non-empty byte strings.

    Raises ValueError for an empty collection or any empty pattern.
    """
    out = tuple(as_pattern_bytes(p) for p in patterns)
    if not out:
        raise ValueError("pattern set is empty")
    for idx, pat in enumerate(out):
        if not pat:
            raise ValueError(f"pattern {idx} is empty")
    return out


@dataclass(frozen=True)
class TrieTables:
    """Flattened pattern structure.

    tr[i-1] is the byte labelling node i; pr[i-1] is the parent of node i
    (0 if node i starts a pattern path); f[p] is the node where input
    pattern p ends.  Parents always precede children (pr[i-1] < i).
    """

    tr: bytes
    pr: tuple[int, ...]
    f: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.tr) != len(self.pr):
            raise ValueError("tr and pr must have equal length")
        for i, parent in enumerate(self.pr, start=1):
            if not 0 <= parent < i:
                raise ValueError(f"parent of node {i} must lie in [0, {i - 1}]")
        for node in self.f:
            if not 1 <= node <= len(self.tr):
                raise ValueError(f"pattern end node {node} out of range")

    @property
    def k(self) -> int:
        """Number of nodes."""
        return len(self.tr)

    @property
    def q(self) -> int:
        """Number of input patterns (duplicates included)."""
        return len(self.f)

    def label(self, node: int) -> int:
        """Byte labelling ``node`` (1-based)."""
        if not 1 <= node <= self.k:
            raise IndexError(f"node {node} out of range 1..{self.k}")
        return self.tr[node - 1]

    def parent(self, node: int) -> int:
        """Parent of ``node`` (1-based), 0 for path starts."""
        if not 1 <= node <= self.k:
            raise IndexError(f"node {node} out of range 1..{self.k}")
        return self.pr[node - 1]


def build_tables(
    patterns: Sequence[bytes | str], merge_prefixes: bool = True
) -> TrieTables:
    """Compile patterns into flattened tables.

    Patterns are inserted in the given order, walking each pattern from its
    first byte and appending newly needed nodes at the end of the tables,
    so the numbering is deterministic.  In merged mode a (parent, byte)
    combination is created at most once and duplicate patterns end on the
    same node; in concatenated mode every pattern gets a fresh chain.
    """
    pats = normalize_patterns(patterns)
    tr = bytearray()
    pr: list[int] = []
    ends: list[int] = []
    if merge_prefixes:
        children: dict[tuple[int, int], int] = {}
        for pat in pats:
            node = 0
            for byte in pat:
                nxt = children.get((node, byte))
                if nxt is None:
                    tr.append(byte)
                    pr.append(node)
                    nxt = len(tr)
                    children[(node, byte)] = nxt
                node = nxt
            ends.append(node)
    else:
        for pat in pats:
            node = 0
            for byte in pat:
                tr.append(byte)
                pr.append(node)
                node = len(tr)
            ends.append(node)
    return TrieTables(tr=bytes(tr), pr=tuple(pr), f=tuple(ends))


def path_word(tables: TrieTables, node: int) -> bytes:
    """Word spelled by the labels from the path start down to ``node``."""
    if not 1 <= node <= tables.k:
        raise IndexError(f"node {node} out of range 1..{tables.k}")
    rev = bytearray()
    while node:
        rev.append(tables.tr[node - 1])
        node = tables.pr[node - 1]
    rev.reverse()
    return bytes(rev)


def pattern_alphabet(tables: TrieTables) -> frozenset[int]:
    """Distinct byte values appearing in any pattern."""
    return frozenset(tables.tr)
