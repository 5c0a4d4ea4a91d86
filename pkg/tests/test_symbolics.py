import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _oracle
from uhfpredict.symbolics import (
    SymbolSequence,
    aggregate_prices,
    batch_block_counts,
    block_codes,
    block_length,
    count_blocks,
    decode_block,
    encode_block,
    log_returns,
    price_moves,
    symbolize_binary,
    symbolize_prices,
)


@pytest.mark.parametrize(
    "n, s, k",
    [(4096, 2, 6), (5225, 2, 6), (100, 3, 2), (10_000, 2, 6), (10_000, 3, 4), (100, 4, 2), (4, 2, 2), (4095, 2, 5)],
)
def test_block_length(n, s, k):
    assert block_length(n, s) == k


@given(st.integers(4, 10**7), st.integers(2, 6))
def test_block_length_matches_float_formula(n, s):
    k = block_length(n, s)
    assert k == max(2, k)
    # the integer rule is floor(0.5 log_s n) except where the log is an exact integer
    expected = max(2, math.floor(0.5 * math.log(n) / math.log(s) + 1e-12))
    assert k == expected


@pytest.mark.parametrize("n, s", [(3, 2), (10, 1)])
def test_block_length_rejects(n, s):
    with pytest.raises(ValueError):
        block_length(n, s)


def test_sequence_validation():
    with pytest.raises(ValueError):
        SymbolSequence(np.array([0, 2]), 2)
    with pytest.raises(ValueError):
        SymbolSequence(np.array([[0, 1]]), 2)
    seq = SymbolSequence.from_string("0 1,1\n0")
    assert str(seq) == "0110" and seq.s == 2
    with pytest.raises(ValueError):
        seq.symbols[0] = 1


def test_relabel():
    seq = SymbolSequence.from_string("0120", 3)
    assert str(seq.relabel([2, 0, 1])) == "2012"
    with pytest.raises(ValueError):
        seq.relabel([0, 0, 1])


@given(st.lists(st.integers(0, 2), min_size=1, max_size=6))
def test_encode_decode_roundtrip(block):
    code = encode_block(block, 3)
    assert 0 <= code < 3 ** len(block)
    assert decode_block(code, len(block), 3) == tuple(block)


def test_code_prefix_and_last_symbol():
    # earliest symbol most significant: prefix = code // s, last = code % s
    for block in product(range(3), repeat=4):
        code = encode_block(block, 3)
        assert code // 3 == encode_block(block[:-1], 3)
        assert code % 3 == block[-1]


def test_count_blocks_examples():
    seq = SymbolSequence.from_string("0101010101")
    assert count_blocks(seq, 2).as_labels() == {"01": 5}
    assert count_blocks(seq, 2, "overlapping").as_labels() == {"01": 5, "10": 4}
    assert count_blocks(SymbolSequence.from_string("00011"), 2).as_labels() == {"00": 1, "01": 1}


@settings(max_examples=60)
@given(st.text("012", min_size=3, max_size=200), st.integers(1, 4), st.booleans())
def test_counts_agree_with_oracle(text, k, overlapping):
    if k > len(text):
        return
    seq = SymbolSequence.from_string(text, 3)
    hist = count_blocks(seq, k, "overlapping" if overlapping else "non-overlapping")
    assert hist.as_labels() == dict(_oracle.block_counts(text, k, overlapping))
    expected_total = len(text) - k + 1 if overlapping else len(text) // k
    assert hist.total == expected_total


def test_batch_counts_match_rows():
    rng = np.random.default_rng(1)
    x = rng.integers(0, 2, (7, 300))
    batch = batch_block_counts(x, 3, 2, "overlapping")
    for row, counts in zip(x, batch):
        assert np.array_equal(counts, np.bincount(block_codes(row, 3, 2, "overlapping"), minlength=8))


def test_symbolize_binary_drops_zeros():
    seq, n_zero = symbolize_binary([0.1, 0.0, -0.2, 0.3, 0.0])
    assert str(seq) == "101" and n_zero == 2


def test_integer_ticks_are_exact():
    # ticks 2238100 -> 2238100 is a zero return; float noise must not create a move
    ticks = np.array([2238100, 2238100, 2238200, 2238100], dtype=np.int64)
    assert price_moves(ticks).tolist() == [0, 1, -1]
    seq, n_zero = symbolize_prices(ticks)
    assert str(seq) == "10" and n_zero == 1


def test_log_returns_rejects_nonpositive():
    with pytest.raises(ValueError):
        log_returns([1.0, 0.0])


@pytest.mark.parametrize(
    "n, a, expected",
    [(10, 1, list(range(10))), (10, 3, [2, 5, 8]), (9, 3, [2, 5, 8]), (2, 3, [])],
)
def test_aggregate_prices(n, a, expected):
    assert aggregate_prices(np.arange(n), a).tolist() == expected


def test_aggregate_rejects_bad_level():
    with pytest.raises(ValueError):
        aggregate_prices([1, 2, 3], 0)
