from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uhfpredict.localization import consecutive_runs, scan_partitions, segment_bounds, sidak_alpha
from uhfpredict.pipeline import read_symbol_text
from uhfpredict.symbolics import SymbolSequence

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize(
    "S, expected",
    [(1, 0.01), (5, 0.0020080483385741996), (10, 0.0010045287082499491)],
)
def test_sidak_alpha(S, expected):
    assert sidak_alpha(S, 0.01) == pytest.approx(expected, rel=1e-12)


@given(st.integers(1, 10_000), st.floats(1e-6, 0.5))
def test_sidak_family_level_restored(S, alpha):
    a = sidak_alpha(S, alpha)
    assert 0 < a <= alpha
    assert 1 - (1 - a) ** S == pytest.approx(alpha, rel=1e-9)


@pytest.mark.parametrize("bad", [(0, 0.01), (2.5, 0.01), (2, 0.0), (2, 1.0)])
def test_sidak_rejects(bad):
    with pytest.raises(ValueError):
        sidak_alpha(*bad)


@given(st.integers(1, 10**6), st.integers(1, 50))
def test_segments_cover_without_overlap(n, S):
    if S > n:
        return
    bounds = segment_bounds(n, S)
    assert bounds[0][0] == 0 and bounds[-1][1] == n
    assert all(b[1] == c[0] for b, c in zip(bounds, bounds[1:]))
    assert all(hi - lo == n // S for lo, hi in bounds[:-1])


def test_consecutive_runs():
    assert consecutive_runs([1, 2, 4, 6, 7, 8]) == [[1, 2], [4], [6, 7, 8]]
    assert consecutive_runs([]) == []


def test_two_regime_fixture_localizes():
    seq = read_symbol_text((DATA / "two_regime.txt").read_text())
    scan = scan_partitions(seq, 0.01)
    assert scan.S_max == 9
    assert scan.best_S >= 2
    # the persistent half is the second one
    assert scan.significant_indices(2) == [2]
    first_half = [r for r in scan.per_S[scan.best_S] if r.stop <= seq.n // 2]
    assert not any(r.significant for r in first_half)


def test_unpredictable_day_stops_at_whole_day():
    rng = np.random.default_rng(11)
    for _ in range(20):
        scan = scan_partitions(SymbolSequence(rng.integers(0, 2, 5000), 2))
        if not scan.per_S[1][0].significant:
            assert scan.best_S == 0 and list(scan.per_S) == [1]
            break


def test_ungated_scan_tests_every_partition():
    rng = np.random.default_rng(2)
    scan = scan_partitions(SymbolSequence(rng.integers(0, 2, 5000), 2), require_daily=False)
    assert sorted(scan.per_S) == list(range(1, scan.S_max + 1))
    # each segment gets its own block length
    assert scan.per_S[4][0].k == 5


def test_short_day():
    scan = scan_partitions(SymbolSequence(np.array([0, 1, 0]), 2))
    assert scan.S_max == 0 and scan.best_S == 0
    scan = scan_partitions(SymbolSequence(np.tile([0, 1], 200), 2))
    assert scan.S_max == 0
    rec = scan.as_record()
    assert rec["best_S"] == 0 and rec["significant_intervals"] == []
