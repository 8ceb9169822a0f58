"""Scikit-learn style wrapper producing window-count features from texts."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .matcher import ENGINES, MODES, count_with_engine
from .trie import build_tables, normalize_patterns


class EpisodeCounter(BaseEstimator, TransformerMixin):
    """Count, per text, the sliding windows containing each pattern.

    For every input text the transformer reports how many of its
    ``window``-sized windows contain each pattern as an in-order
    subsequence, and optionally how many contain all patterns at once.
    Useful for turning event logs or byte streams into co-occurrence
    features (e.g. as support counts for association rules).

    Parameters
    ----------
    patterns : sequence of str or bytes
        Non-empty patterns to search for.  Strings are encoded as UTF-8.
    window : int, default=10
        Window length in bytes.
    mode : {"both", "each", "all"}, default="both"
        Which counts to emit: one column per pattern, a single
        all-patterns column, or both (per-pattern columns first).
    engine : {"mp-trie", "mp-concat", "std-trie", "std-concat", "brute"}, \
default="mp-trie"
        Counting engine; results are identical, speed differs.

    Attributes
    ----------
    patterns_ : tuple of bytes
        Validated patterns in input order.
    n_features_out_ : int
        Number of output columns.

    Examples
    --------
    >>> ec = EpisodeCounter(patterns=["ab", "ca"], window=3, mode="both")
    >>> ec.fit_transform([b"abcab"])
    array([[2, 2, 1]])
    """

    def __init__(self, patterns=None, window=10, mode="both", engine="mp-trie"):
        self.patterns = patterns
        self.window = window
        self.mode = mode
        self.engine = engine

    def fit(self, X=None, y=None):
        """Validate parameters and compile the pattern structure.

        X is accepted for pipeline compatibility and ignored: everything
        is determined by the constructor parameters.
        """
        if self.patterns is None:
            raise ValueError("patterns must be provided")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        if not isinstance(self.window, int) or isinstance(self.window, bool) or self.window < 1:
            raise ValueError(f"window must be an integer >= 1, got {self.window!r}")
        self.patterns_ = normalize_patterns(self.patterns)
        # fail fast on structural problems; engines rebuild this cheaply
        build_tables(self.patterns_, merge_prefixes=True)
        q = len(self.patterns_)
        self.n_features_out_ = {"each": q, "all": 1, "both": q + 1}[self.mode]
        return self

    def transform(self, X):
        """Count windows in each text.

        Parameters
        ----------
        X : iterable of bytes or str
            Texts to scan; strings are encoded as UTF-8.

        Returns
        -------
        ndarray of shape (n_texts, n_features_out_), dtype int64
        """
        check_is_fitted(self, "patterns_")
        rows = []
        for text in X:
            if isinstance(text, str):
                text = text.encode("utf-8")
            report = count_with_engine(
                self.engine, text, self.patterns_, self.window, self.mode
            )
            if self.mode == "each":
                rows.append(report.c_each)
            elif self.mode == "all":
                rows.append((report.c_all,))
            else:
                rows.append((*report.c_each, report.c_all))
        return np.asarray(rows, dtype=np.int64).reshape(len(rows), self.n_features_out_)

    def get_feature_names_out(self, input_features=None):
        """Column names: one per pattern, plus "all_patterns" in both mode."""
        check_is_fitted(self, "patterns_")
        names = [
            f"windows_with[{pat.decode('utf-8', 'backslashreplace')}]"
            for pat in self.patterns_
        ]
        if self.mode == "all":
            return np.asarray(["windows_with_all"], dtype=object)
        if self.mode == "both":
            names.append("windows_with_all")
        return np.asarray(names, dtype=object)
