"""Day loading and per-day analyses shared by the command-line commands.

A day comes from one file: a LOBSTER message file, a derived series CSV
(``timestamp_ns,price_ticks,size``), a simulator CSV (``step,sign,price``) or
a plain symbol file (digits, whitespace ignored). Every analysis returns flat
records keyed by ``(ticker, date, a, test_kind)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dayprofile import DayProfile, profile_day
from .ingest import collapse_simultaneous, find_message_files, parse_messages, read_series_csv
from .localization import scan_partitions
from .sim.base import SimOutput
from .stattests import DEFAULT_ALPHA, entropy_bias, np_statistic
from .symbolics import SymbolSequence, aggregate_prices, block_length, symbolize_prices

RECORD_KEYS = ("ticker", "date", "a", "test_kind")
_NAME = re.compile(r"^(?P<ticker>[A-Za-z.]+)_(?P<date>\d{4}-\d{2}-\d{2})")
_DATE = re.compile(r"\d{4}-\d{2}-\d{2}")


@dataclass(frozen=True)
class Day:
    """One instrument-day in transaction time.

    Exactly one of ``prices`` (trade prices, integer ticks for market data)
    and ``symbols`` (a ready symbol sequence) drives the analyses.
    """

    ticker: str
    date: str
    prices: np.ndarray | None = None
    volumes: np.ndarray | None = None
    symbols: SymbolSequence | None = None
    source: str = ""

    @property
    def month(self) -> str:
        return self.date[:7] if _DATE.fullmatch(self.date) else "all"


def _label(path: Path, ticker: str | None) -> tuple[str, str]:
    m = _NAME.match(path.name)
    if m:
        return ticker or m["ticker"], m["date"]
    return ticker or "", path.stem


def read_symbol_text(text: str, s: int | None = None) -> SymbolSequence:
    digits = re.sub(r"\s+", "", text)
    if not digits.isdigit():
        raise ValueError("symbol input must contain only digits and whitespace")
    sym = np.frombuffer(digits.encode(), dtype=np.uint8).astype(np.int64) - ord("0")
    s = s or max(2, int(sym.max()) + 1 if sym.size else 2)
    return SymbolSequence(sym, s)


def load_day(path, collapse: bool = False, ticker: str | None = None) -> Day:
    """Read one file into a :class:`Day`, detecting its format from the first line."""
    path = Path(path)
    tk, date = _label(path, ticker)
    with open(path) as fh:
        head = fh.readline().strip()
    if path.suffix == ".txt":
        return Day(tk, date, symbols=read_symbol_text(path.read_text()), source=str(path))
    if head.startswith("step,sign"):
        sim = SimOutput.read_csv(path)
        if sim.prices is not None:
            return Day(tk, date, prices=sim.prices, source=str(path))
        return Day(tk, date, symbols=SymbolSequence((sim.signs > 0).astype(np.int64), 2), source=str(path))
    if head.startswith("timestamp_ns"):
        series = read_series_csv(path, tk, date)
    else:
        series = parse_messages(path, ticker=tk, date=date)
    if collapse:
        series = collapse_simultaneous(series)
    return Day(series.ticker, series.date, prices=series.price, volumes=series.size, source=str(path))


def discover(inputs, date_from: str | None = None, date_to: str | None = None) -> list[Path]:
    """Files under the given paths, sorted, optionally restricted to a date range (inclusive)."""
    files: list[Path] = []
    for p in inputs:
        p = Path(p)
        if p.is_dir():
            found = find_message_files(p) + sorted(p.glob("*.txt"))
            files.extend(sorted(set(found)))
        elif p.exists():
            files.append(p)
        else:
            raise FileNotFoundError(f"no such input: {p}")
    out = []
    for f in files:
        _, date = _label(f, None)
        if date_from and date < date_from:
            continue
        if date_to and date > date_to:
            continue
        out.append(f)
    return out


def day_symbols(day: Day, a: int = 1) -> tuple[SymbolSequence, int]:
    """Symbols after aggregating by ``a`` transactions, and the number of zero returns dropped.

    For a ready symbol sequence, aggregation keeps every ``a``-th symbol.
    """
    if day.symbols is not None:
        if int(a) != a or a < 1:
            raise ValueError(f"aggregation level must be an integer >= 1, got {a}")
        return SymbolSequence(day.symbols.symbols[::a], day.symbols.s), 0
    if day.prices is None or len(day.prices) < 2:
        return SymbolSequence(np.empty(0, dtype=np.int64), 2), 0
    return symbolize_prices(aggregate_prices(day.prices, a))


def _base(day: Day, a: int, kind: str) -> dict:
    return {"ticker": day.ticker, "date": day.date, "a": a, "test_kind": kind}


def day_tests(day: Day, a: int = 1, alpha: float = DEFAULT_ALPHA, k: int | None = None) -> list[dict]:
    """Entropy-bias and NP records for one day."""
    seq, n_zero = day_symbols(day, a)
    out = []
    for kind, fn, min_k in (("entropy-bias", entropy_bias, 1), ("neyman-pearson", np_statistic, 2)):
        rec = _base(day, a, kind)
        kk = k if k is not None else (block_length(seq.n, seq.s) if seq.n >= 4 else None)
        ok = kk is not None and kk >= min_k and (seq.n > kk if kind == "neyman-pearson" else seq.n >= kk)
        if ok:
            res = fn(seq, kk, alpha)
            rec.update(n=seq.n, n_zero=n_zero, k=kk, statistic=res.statistic, df=res.df,
                       p_value=res.p_value, alpha=alpha, predictable=res.predictable, insufficient=False)
        else:
            rec.update(n=seq.n, n_zero=n_zero, k=kk, statistic=None, df=None, p_value=None,
                       alpha=alpha, predictable=False, insufficient=True)
        out.append(rec)
    return out


def localize_day(day: Day, a: int = 1, alpha: float = DEFAULT_ALPHA, require_daily: bool = True) -> dict:
    seq, _ = day_symbols(day, a)
    scan = scan_partitions(seq, alpha, day=day.date, require_daily=require_daily)
    rec = _base(day, a, "sidak-partition")
    body = scan.as_record()
    body.pop("day")
    rec.update(body)
    return rec


def profile_record(day: Day, a: int = 1, alpha: float = DEFAULT_ALPHA, k: int | None = None) -> tuple[dict, DayProfile]:
    if day.prices is None:
        raise ValueError(f"{day.source or day.date}: profiling needs prices")
    prof = profile_day(aggregate_prices(day.prices, a), day.volumes, alpha=alpha, k=k, day=day.date)
    rec = _base(day, a, "profile")
    body = prof.as_record()
    body.pop("day")
    rec.update(body)
    return rec, prof


def predictable_fraction_table(records: list[dict], months: list[str], levels: list[int]) -> list[dict]:
    """Rows ``{month, a=<fraction>...}`` from NP test records carrying ``month``."""
    rows = []
    for month in months:
        row = {"month": month}
        for a in levels:
            sel = [r for r in records if r["month"] == month and r["a"] == a and r["test_kind"] == "neyman-pearson"]
            row[f"a={a}"] = sum(r["predictable"] for r in sel) / len(sel) if sel else math.nan
        rows.append(row)
    return rows
