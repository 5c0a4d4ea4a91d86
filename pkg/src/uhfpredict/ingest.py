"""Read LOBSTER-style message files into executed-trade series.

Message files have six comma-separated columns: time (seconds after
midnight, up to nanosecond precision), event type, order id, size, price in
units of 1/10000 currency and direction. Only executions are kept, type 4
(visible) and type 5 (hidden). Times are held as integer nanoseconds and
prices as integer ticks, so equal timestamps and zero returns compare
exactly.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

import numpy as np

EXECUTION_TYPES = frozenset({4, 5})
SESSION_OPEN_NS = 34_200 * 10**9
SESSION_CLOSE_NS = 57_600 * 10**9
PRICE_SCALE = 10_000

_LOBSTER_NAME = re.compile(r"(?P<ticker>[A-Za-z.]+)_(?P<date>\d{4}-\d{2}-\d{2})_")


class MessageParseError(ValueError):
    def __init__(self, path, line: int, reason: str):
        self.path, self.line = path, line
        super().__init__(f"{path}:{line}: {reason}")


class TickRecord(NamedTuple):
    time_ns: int
    event_type: int
    order_id: int
    size: int
    price: int
    direction: int

    @property
    def time(self) -> float:
        """Seconds after midnight (float; use ``time_ns`` for exact comparisons)."""
        return self.time_ns / 1e9


@dataclass(frozen=True)
class TickSeries:
    """Executed trades of one instrument-day as parallel integer columns."""

    time_ns: np.ndarray
    price: np.ndarray
    size: np.ndarray
    event_type: np.ndarray | None = None
    order_id: np.ndarray | None = None
    direction: np.ndarray | None = None
    ticker: str = ""
    date: str = ""
    rows_read: int = 0
    rows_dropped: int = 0

    def __post_init__(self):
        n = len(self.time_ns)
        for name in ("price", "size", "event_type", "order_id", "direction"):
            col = getattr(self, name)
            if col is not None and len(col) != n:
                raise ValueError(f"column {name} has length {len(col)}, expected {n}")
        if n > 1 and np.any(np.diff(self.time_ns) < 0):
            raise ValueError("times must be non-decreasing")

    def __len__(self) -> int:
        return int(len(self.time_ns))

    def __iter__(self) -> Iterator[TickRecord]:
        n = len(self)
        et = self.event_type if self.event_type is not None else np.full(n, 4)
        oid = self.order_id if self.order_id is not None else np.zeros(n, dtype=np.int64)
        dr = self.direction if self.direction is not None else np.zeros(n, dtype=np.int64)
        for row in zip(self.time_ns.tolist(), et.tolist(), oid.tolist(), self.size.tolist(),
                       self.price.tolist(), dr.tolist()):
            yield TickRecord(*row)

    def __getitem__(self, i: int) -> TickRecord:
        if not -len(self) <= i < len(self):
            raise IndexError(i)
        return TickRecord(
            int(self.time_ns[i]),
            int(self.event_type[i]) if self.event_type is not None else 4,
            int(self.order_id[i]) if self.order_id is not None else 0,
            int(self.size[i]),
            int(self.price[i]),
            int(self.direction[i]) if self.direction is not None else 0,
        )

    @property
    def prices(self) -> np.ndarray:
        """Prices in currency units."""
        return self.price / PRICE_SCALE

    @property
    def month(self) -> str:
        return self.date[:7]


def parse_time_ns(text: str) -> int:
    """Exact integer nanoseconds from a decimal seconds string."""
    text = text.strip()
    if not text or text.startswith(("-", "+")) or "e" in text.lower():
        raise ValueError(f"bad timestamp {text!r}")
    whole, _, frac = text.partition(".")
    if not whole.isdigit() or (frac and not frac.isdigit()) or len(frac) > 9:
        raise ValueError(f"bad timestamp {text!r}")
    return int(whole) * 10**9 + int(frac.ljust(9, "0") or 0)


def format_time_ns(ns: int) -> str:
    sec, frac = divmod(int(ns), 10**9)
    return f"{sec}.{frac:09d}"


def parse_messages(
    path,
    event_types: Iterable[int] = EXECUTION_TYPES,
    ticker: str | None = None,
    date: str | None = None,
    session_only: bool = True,
) -> TickSeries:
    """Parse one message file and keep execution events.

    Parameters
    ----------
    path : path-like
        Message CSV, six columns, no header.
    event_types : iterable of int
        Event codes to keep; 4 and 5 by default.
    ticker, date : str, optional
        Taken from a LOBSTER file name (``TICKER_YYYY-MM-DD_...``) when not given.
    session_only : bool
        Drop events outside 9:30-16:00.

    Raises
    ------
    MessageParseError
        On a row without six integer-valued columns, with its line number.
    """
    path = Path(path)
    keep = frozenset(int(e) for e in event_types)
    m = _LOBSTER_NAME.match(path.name)
    ticker = ticker if ticker is not None else (m["ticker"] if m else "")
    date = date if date is not None else (m["date"] if m else path.stem)

    cols: list[list[int]] = [[] for _ in range(6)]
    rows = 0
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            rows += 1
            if len(row) != 6:
                raise MessageParseError(path, lineno, f"expected 6 columns, found {len(row)}")
            try:
                t = parse_time_ns(row[0])
                et, oid, size, price, direction = (int(v) for v in row[1:])
            except ValueError as exc:
                raise MessageParseError(path, lineno, str(exc)) from None
            if et not in keep:
                continue
            if session_only and not SESSION_OPEN_NS <= t <= SESSION_CLOSE_NS:
                continue
            if size <= 0 or price <= 0:
                raise MessageParseError(path, lineno, "size and price must be positive")
            for c, v in zip(cols, (t, et, oid, size, price, direction)):
                c.append(v)
    arrays = [np.array(c, dtype=np.int64) for c in cols]
    return TickSeries(
        time_ns=arrays[0], price=arrays[4], size=arrays[3], event_type=arrays[1],
        order_id=arrays[2], direction=arrays[5], ticker=ticker, date=date,
        rows_read=rows, rows_dropped=rows - len(arrays[0]),
    )


def messages_to_csv(series: TickSeries) -> str:
    """Serialize back to the six-column message format."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in series:
        w.writerow([format_time_ns(r.time_ns), r.event_type, r.order_id, r.size, r.price, r.direction])
    return buf.getvalue()


def collapse_simultaneous(series: TickSeries) -> TickSeries:
    """Merge trades sharing a nanosecond timestamp: sizes summed, last price kept."""
    t = series.time_ns
    if len(t) == 0:
        return series
    last = np.flatnonzero(np.r_[t[1:] != t[:-1], True])
    first = np.r_[0, last[:-1] + 1]
    size = np.add.reduceat(series.size, first)

    def pick(col):
        return None if col is None else col[last]

    return TickSeries(
        time_ns=t[last], price=series.price[last], size=size,
        event_type=pick(series.event_type), order_id=pick(series.order_id),
        direction=pick(series.direction), ticker=series.ticker, date=series.date,
        rows_read=series.rows_read, rows_dropped=series.rows_dropped,
    )


@dataclass(frozen=True)
class DaySummary:
    ticker: str
    date: str
    mean_price: float
    price_sd: float
    volume: int
    transactions: int
    mean_intertrade_seconds: float

    def as_record(self) -> dict:
        return dict(self.__dict__)


def day_summary(series: TickSeries) -> DaySummary:
    """Mean and standard deviation of price, volume, trade count and mean time between trades."""
    if len(series) == 0:
        raise ValueError("cannot summarize an empty series")
    prices = series.prices
    gaps = np.diff(series.time_ns)
    return DaySummary(
        ticker=series.ticker,
        date=series.date,
        mean_price=float(prices.mean()),
        price_sd=float(prices.std()),
        volume=int(series.size.sum()),
        transactions=len(series),
        mean_intertrade_seconds=float(gaps.mean() / 1e9) if gaps.size else float("nan"),
    )


def series_to_csv(series: TickSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["timestamp_ns", "price_ticks", "size"])
    w.writerows(zip(series.time_ns.tolist(), series.price.tolist(), series.size.tolist()))
    return buf.getvalue()


def read_series_csv(path, ticker: str = "", date: str = "") -> TickSeries:
    t, p, s = [], [], []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            t.append(int(row["timestamp_ns"]))
            p.append(int(row["price_ticks"]))
            s.append(int(row["size"]))
    return TickSeries(np.array(t, dtype=np.int64), np.array(p, dtype=np.int64),
                      np.array(s, dtype=np.int64), ticker=ticker, date=date)


def write_series(series: TickSeries, out_dir, stem: str | None = None) -> tuple[Path, Path]:
    """Write ``<stem>.csv`` (timestamp_ns, price_ticks, size) and a ``<stem>.summary.json`` sidecar."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = stem or "_".join(x for x in (series.ticker, series.date) if x) or "series"
    csv_path = out_dir / f"{stem}.csv"
    csv_path.write_text(series_to_csv(series))
    json_path = out_dir / f"{stem}.summary.json"
    record = day_summary(series).as_record() if len(series) else {"ticker": series.ticker, "date": series.date, "transactions": 0}
    record.update(rows_read=series.rows_read, rows_dropped=series.rows_dropped)
    json_path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    return csv_path, json_path


def find_message_files(root) -> list[Path]:
    """Message files under a directory (``*message*.csv``, else every ``*.csv``), sorted by name."""
    root = Path(root)
    if root.is_file():
        return [root]
    files = sorted(root.glob("*message*.csv")) or sorted(root.glob("*.csv"))
    return files
