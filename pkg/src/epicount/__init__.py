"""epicount: count sliding text windows containing patterns as subsequences.

A window of size w "contains" a pattern when the pattern's bytes occur in
the window in order, possibly interleaved with other bytes.  This package
counts, in one pass over a text, how many of the n-w+1 windows contain
each of several patterns and how many contain all of them, using a packed
bit-parallel automaton; a standard per-node engine and a brute-force
oracle serve as baselines and cross-checks.
"""

from .bitstate import (
    BitVector,
    MaskSet,
    StateVector,
    all_contained,
    build_masks,
    compute_omega,
    contained,
    decode,
    encode,
    initial_state,
    render_state,
    step,
    step_trace,
)
from .matcher import (
    ENGINES,
    MODES,
    CountReport,
    FeedResult,
    ScanState,
    brute_count,
    count_with_engine,
    feed,
    is_subsequence,
    scan_count,
    std_scan_count,
)
from .trie import TrieTables, build_tables, normalize_patterns, path_word, pattern_alphabet

__version__ = "0.1.0"

__all__ = [
    "BitVector",
    "CountReport",
    "ENGINES",
    "EpisodeCounter",
    "FeedResult",
    "MODES",
    "MaskSet",
    "ScanState",
    "StateVector",
    "TrieTables",
    "all_contained",
    "brute_count",
    "build_masks",
    "build_tables",
    "compute_omega",
    "contained",
    "count_with_engine",
    "decode",
    "encode",
    "feed",
    "initial_state",
    "is_subsequence",
    "normalize_patterns",
    "path_word",
    "pattern_alphabet",
    "render_state",
    "scan_count",
    "std_scan_count",
    "step",
    "step_trace",
]


def __getattr__(name):
    # EpisodeCounter pulls in numpy + scikit-learn; import it on demand so
    # the CLI and the core stay fast to load
    if name == "EpisodeCounter":
        from .estimator import EpisodeCounter

        return EpisodeCounter
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
