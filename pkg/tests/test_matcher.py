import random

import pytest

from epicount.matcher import (
    CountReport,
    ScanState,
    brute_count,
    count_with_engine,
    feed,
    is_subsequence,
    scan_count,
    std_scan_count,
)
from epicount.selftest import check_instance, random_instance
from epicount.trie import build_tables

from oracles import CountingReader, subsequence_exhaustive, window_count_oracle

EXAMPLE_TEXT = b"dans ville il y a vie"


def test_exact_window_equals_pattern():
    tables = build_tables([b"tu"])
    assert scan_count(b"tu", tables, 2, "both") == CountReport(1, 1, (1,))
    assert std_scan_count(b"tu", tables, 2, "both") == CountReport(1, 1, (1,))


def test_two_patterns_three_windows():
    # windows of abcab at w=3: abc, bca, cab -> ab in {abc, cab}, ca in
    # {bca, cab}, both only in cab
    expected = window_count_oracle(b"abcab", [b"ab", b"ca"], 3)
    assert expected == (1, (2, 2))
    for engine in ("mp-trie", "mp-concat", "std-trie", "std-concat", "brute"):
        report = count_with_engine(engine, b"abcab", [b"ab", b"ca"], 3, "both")
        assert (report.c_all, report.c_each) == expected
        assert report.windows_total == 3


def test_advertisement_text_counts():
    assert len(EXAMPLE_TEXT) == 21
    assert count_with_engine("mp-trie", EXAMPLE_TEXT, [b"vile"], 5, "all").c_all == 1
    assert count_with_engine("mp-trie", EXAMPLE_TEXT, [b"vie"], 5, "all").c_all == 2
    assert count_with_engine("mp-trie", EXAMPLE_TEXT, [b"vile"], 4, "all").c_all == 0
    assert window_count_oracle(EXAMPLE_TEXT, [b"vile"], 5)[0] == 1
    assert window_count_oracle(EXAMPLE_TEXT, [b"vie"], 5)[0] == 2


def test_std_repeated_letter():
    tables = build_tables([b"a"])
    report = std_scan_count(b"aaaa", tables, 2, "each")
    assert report.c_each == (3,)
    assert report.windows_total == 3
    assert report.c_all is None


def test_self_overlapping_pattern_needs_two_occurrences():
    # 'aa' must not match windows holding a single 'a'; catches engines
    # that let a fresh occurrence flow through the whole chain in one step
    for engine in ("mp-trie", "std-trie"):
        assert count_with_engine(engine, b"ba", [b"aa"], 2, "all").c_all == 0
        assert count_with_engine(engine, b"abba", [b"aa"], 2, "all").c_all == 0
        assert count_with_engine(engine, b"aa", [b"aa"], 2, "all").c_all == 1


def test_brute_greedy_examples():
    assert is_subsequence(b"ville", b"vile")
    assert not any(
        is_subsequence(EXAMPLE_TEXT[s : s + 4], b"vile")
        for s in range(len(EXAMPLE_TEXT) - 3)
    )
    assert brute_count(b"abc", [b"abcd"], 3, "both") == CountReport(1, 0, (0,))


def test_greedy_matches_exhaustive_on_short_windows():
    rng = random.Random(0x90)
    for _ in range(600):
        window = bytes(rng.randrange(3) for _ in range(rng.randint(0, 12)))
        pattern = bytes(rng.randrange(3) for _ in range(rng.randint(1, 6)))
        assert is_subsequence(window, pattern) == subsequence_exhaustive(
            window, pattern
        )


def test_engine_equivalence_fuzz():
    rng = random.Random(0xD1FF)
    for _ in range(400):
        text, patterns, w = random_instance(rng, max_n=120)
        assert check_instance(text, patterns, w) == []


def test_window_larger_than_text():
    report = count_with_engine("mp-trie", b"abc", [b"a"], 10, "both")
    assert report == CountReport(0, 0, (0,))
    assert count_with_engine("std-trie", b"abc", [b"a"], 10, "both") == report
    assert count_with_engine("brute", b"abc", [b"a"], 10, "both") == report


def test_empty_text():
    report = count_with_engine("mp-concat", b"", [b"a"], 3, "both")
    assert report == CountReport(0, 0, (0,))


def test_pattern_longer_than_window_never_matches():
    report = count_with_engine("mp-trie", b"ababab", [b"aba", b"ab"], 2, "both")
    assert report.c_each[0] == 0
    assert report.c_all == 0
    assert report.c_each[1] > 0


def test_duplicate_patterns_report_same_counts():
    report = count_with_engine("mp-trie", b"xatax", [b"at", b"at"], 4, "each")
    assert report.c_each[0] == report.c_each[1]
    concat = count_with_engine("mp-concat", b"xatax", [b"at", b"at"], 4, "each")
    assert concat.c_each == report.c_each


def test_high_byte_values():
    rng = random.Random(255)
    text = bytes(rng.randrange(248, 256) for _ in range(300))
    patterns = [b"\xff\xfe", b"\xf8\xf8\xfb"]
    expected = window_count_oracle(text, patterns, 6)
    for engine in ("mp-trie", "mp-concat", "std-trie", "std-concat", "brute"):
        report = count_with_engine(engine, text, patterns, 6, "both")
        assert (report.c_all, report.c_each) == expected


def test_mode_field_population():
    tables = build_tables([b"ab"])
    assert scan_count(b"abab", tables, 2, "all").c_each is None
    assert scan_count(b"abab", tables, 2, "each").c_all is None
    both = scan_count(b"abab", tables, 2, "both")
    assert both.c_all is not None and both.c_each is not None


def test_input_validation():
    tables = build_tables([b"ab"])
    with pytest.raises(TypeError):
        scan_count("abab", tables, 2)
    with pytest.raises(TypeError):
        brute_count("abab", [b"ab"], 2)
    with pytest.raises(ValueError):
        scan_count(b"abab", tables, 0)
    with pytest.raises(ValueError):
        scan_count(b"abab", tables, 2, "most")
    with pytest.raises(ValueError):
        count_with_engine("warp", b"ab", [b"a"], 1)
    with pytest.raises(ValueError):
        count_with_engine("mp-trie", b"ab", [], 1)


def test_counts_report_invariants_fuzz():
    rng = random.Random(0xB0B)
    for _ in range(300):
        text, patterns, w = random_instance(rng, max_n=100)
        report = count_with_engine("mp-trie", text, patterns, w, "both")
        assert 0 <= report.c_all <= min(report.c_each) <= report.windows_total
        for i, pi in enumerate(patterns):
            for j, pj in enumerate(patterns):
                if pj.startswith(pi):
                    assert report.c_each[i] >= report.c_each[j]


def test_engines_accept_byte_iterators_and_match_bytes_path():
    rng = random.Random(4)
    for _ in range(60):
        text, patterns, w = random_instance(rng, max_n=80)
        tables = build_tables(patterns)
        for mode in ("all", "both"):
            from_bytes = scan_count(text, tables, w, mode)
            from_iter = scan_count(iter(text), tables, w, mode)
            assert from_bytes == from_iter
            assert std_scan_count(iter(text), tables, w, mode) == std_scan_count(
                text, tables, w, mode
            )


def test_single_pass_reading():
    text = bytes(random.Random(8).randrange(4) for _ in range(5000))
    tables = build_tables([b"\x00\x01", b"\x02\x01\x03"])
    for runner in (scan_count, std_scan_count):
        reader = CountingReader(text)
        report = runner(reader, tables, 9, "both")
        assert reader.reads == len(text)
        assert report == runner(text, tables, 9, "both")


def test_limb_width_scan_matches_integer_scan():
    rng = random.Random(0x11B)
    for _ in range(60):
        text, patterns, w = random_instance(rng, max_n=80)
        for merged in (True, False):
            tables = build_tables(patterns, merge_prefixes=merged)
            base = scan_count(text, tables, w, "both")
            for lw in (3, 8, 16):
                assert scan_count(text, tables, w, "both", limb_width=lw) == base


# ---------------------------------------------------------------------------
# streaming feed interface
# ---------------------------------------------------------------------------


def test_feed_simple_pattern():
    scan = ScanState(build_tables([b"tu"]), 2)
    first = scan.feed(ord("t"))
    assert not first.valid
    second = feed(scan, ord("u"))
    assert second.valid and second.all_contained and second.each == (True,)


def test_feed_letter_outside_alphabet():
    scan = ScanState(build_tables([b"tu"]), 1)
    res = scan.feed(ord("z"))
    assert res.valid and not res.all_contained and res.each == (False,)


def test_feed_flags_match_brute_windows():
    rng = random.Random(0xFEED)
    for _ in range(80):
        text, patterns, w = random_instance(rng, max_n=60)
        tables = build_tables(patterns)
        for engine in ("mp", "std"):
            scan = ScanState(tables, w, engine)
            for m, byte in enumerate(text, start=1):
                res = scan.feed(byte)
                assert res.valid == (m >= w)
                if res.valid:
                    window = text[m - w : m]
                    expected = tuple(is_subsequence(window, p) for p in patterns)
                    assert res.each == expected
                    assert res.all_contained == all(expected)


def test_feed_accumulates_to_scan_count():
    rng = random.Random(0xACC)
    for _ in range(80):
        text, patterns, w = random_instance(rng, max_n=80)
        tables = build_tables(patterns)
        expected = scan_count(text, tables, w, "both")
        for engine in ("mp", "std"):
            scan = ScanState(tables, w, engine)
            for byte in text:
                scan.feed(byte)
            assert scan.report("both") == expected


def test_feed_limbed_engine():
    tables = build_tables([b"ab", b"ba"])
    scan = ScanState(tables, 3, "mp", limb_width=5)
    plain = ScanState(tables, 3, "mp")
    text = b"abbab"
    for byte in text:
        assert scan.feed(byte) == plain.feed(byte)
    assert scan.report() == plain.report()


def test_scanstate_validation():
    tables = build_tables([b"ab"])
    with pytest.raises(ValueError):
        ScanState(tables, 2, "quantum")
    with pytest.raises(ValueError):
        ScanState(tables, 0)
