import numpy as np
import pytest
from sklearn.base import clone

from epicount import EpisodeCounter
from epicount.matcher import count_with_engine


def test_transform_counts_match_engine():
    texts = [b"abcab", b"bbbbb", b"abab"]
    ec = EpisodeCounter(patterns=[b"ab", b"ca"], window=3, mode="both").fit()
    out = ec.transform(texts)
    assert out.shape == (3, 3)
    assert out.dtype == np.int64
    for row, text in zip(out, texts):
        report = count_with_engine("mp-trie", text, [b"ab", b"ca"], 3, "both")
        assert tuple(row) == (*report.c_each, report.c_all)


def test_transform_modes_and_shapes():
    texts = ["abcab"]
    each = EpisodeCounter(patterns=["ab", "ca"], window=3, mode="each").fit_transform(texts)
    allm = EpisodeCounter(patterns=["ab", "ca"], window=3, mode="all").fit_transform(texts)
    both = EpisodeCounter(patterns=["ab", "ca"], window=3, mode="both").fit_transform(texts)
    assert each.shape == (1, 2) and each.tolist() == [[2, 2]]
    assert allm.shape == (1, 1) and allm.tolist() == [[1]]
    assert both.tolist() == [[2, 2, 1]]


def test_str_and_bytes_texts_agree():
    ec = EpisodeCounter(patterns=["vie"], window=5).fit()
    got_str = ec.transform(["dans ville il y a vie"])
    got_bytes = ec.transform([b"dans ville il y a vie"])
    assert got_str.tolist() == got_bytes.tolist() == [[2, 2]]


def test_engines_give_identical_features():
    texts = [b"aabbccabc" * 3]
    base = None
    for engine in ("mp-trie", "mp-concat", "std-trie", "std-concat", "brute"):
        ec = EpisodeCounter(patterns=[b"abc", b"cb"], window=5, engine=engine).fit()
        out = ec.transform(texts)
        if base is None:
            base = out
        assert (out == base).all()


def test_fit_validation():
    with pytest.raises(ValueError, match="patterns"):
        EpisodeCounter().fit()
    with pytest.raises(ValueError, match="empty"):
        EpisodeCounter(patterns=[b""]).fit()
    with pytest.raises(ValueError, match="window"):
        EpisodeCounter(patterns=[b"a"], window=0).fit()
    with pytest.raises(ValueError, match="mode"):
        EpisodeCounter(patterns=[b"a"], mode="sideways").fit()
    with pytest.raises(ValueError, match="engine"):
        EpisodeCounter(patterns=[b"a"], engine="gpu").fit()


def test_transform_requires_fit():
    from sklearn.exceptions import NotFittedError

    with pytest.raises(NotFittedError):
        EpisodeCounter(patterns=[b"a"]).transform([b"aa"])


def test_sklearn_params_protocol():
    ec = EpisodeCounter(patterns=[b"ab"], window=4, mode="each", engine="std-trie")
    params = ec.get_params()
    assert params["window"] == 4 and params["engine"] == "std-trie"
    cloned = clone(ec)
    assert cloned.get_params() == params
    cloned.set_params(window=7)
    assert cloned.fit().window == 7


def test_feature_names():
    ec = EpisodeCounter(patterns=["ab", "ca"], window=3, mode="both").fit()
    assert list(ec.get_feature_names_out()) == [
        "windows_with[ab]",
        "windows_with[ca]",
        "windows_with_all",
    ]
    ec_all = EpisodeCounter(patterns=["ab"], window=3, mode="all").fit()
    assert list(ec_all.get_feature_names_out()) == ["windows_with_all"]
