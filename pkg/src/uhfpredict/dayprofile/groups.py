"""Compare mean characteristics of predictable and unpredictable days."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats

from .features import CHARACTERISTICS, DayProfile


def stars(p: float) -> str:
    if not np.isfinite(p):
        return ""
    return "**" if p < 0.01 else "*" if p < 0.05 else ""


def welch_pvalue(x, y) -> float:
    """Two-sided Welch unequal-variance t-test p-value.

    Two constant samples give 1 when the means agree and 0 when they differ.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    mx, my = x.mean(), y.mean()
    if np.var(x) == 0.0 and np.var(y) == 0.0:
        return 1.0 if mx == my else 0.0
    if mx == my:
        return 1.0
    p = float(stats.ttest_ind(x, y, equal_var=False).pvalue)
    return min(max(p, 0.0), 1.0)


@dataclass(frozen=True)
class CharacteristicRow:
    name: str
    mean_predictable: float
    mean_unpredictable: float
    p_value: float
    stars: str
    direction: str  # ">" when predictable days have the larger mean


@dataclass
class GroupComparison:
    n_predictable: int
    n_unpredictable: int
    rows: list[CharacteristicRow] = field(default_factory=list)
    skipped: str | None = None

    def row(self, name: str) -> CharacteristicRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_records(self) -> list[dict]:
        return [r.__dict__.copy() for r in self.rows]

    def to_json(self) -> str:
        return json.dumps(
            {
                "n_predictable": self.n_predictable,
                "n_unpredictable": self.n_unpredictable,
                "skipped": self.skipped,
                "rows": self.to_records(),
            },
            indent=2,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["parameter", "mean_predictable", "mean_unpredictable", "p_value", "stars", "direction"])
        w.writerow(["sample_size", self.n_predictable, self.n_unpredictable, "", "", ""])
        for r in self.rows:
            w.writerow([r.name, repr(r.mean_predictable), repr(r.mean_unpredictable), repr(r.p_value), r.stars, r.direction])
        return buf.getvalue()


def compare_values(name: str, pred: Sequence[float], unpred: Sequence[float]) -> CharacteristicRow:
    x = np.asarray(pred, dtype=float)
    y = np.asarray(unpred, dtype=float)
    x, y = x[np.isfinite(x)], y[np.isfinite(y)]
    if x.size < 2 or y.size < 2:
        return CharacteristicRow(name, float(x.mean()) if x.size else math.nan,
                                 float(y.mean()) if y.size else math.nan, math.nan, "", "")
    p = welch_pvalue(x, y)
    mx, my = float(x.mean()), float(y.mean())
    direction = ">" if mx > my else "<" if mx < my else "="
    return CharacteristicRow(name, mx, my, p, stars(p), direction)


def compare_groups(
    profiles: Sequence[DayProfile],
    characteristics: Sequence[str] = CHARACTERISTICS,
) -> GroupComparison:
    """Split days by verdict and Welch-test each characteristic.

    Insufficient days are left out. With fewer than two days in either group
    the comparison is returned empty with ``skipped`` giving the reason.
    """
    usable = [p for p in profiles if not p.insufficient]
    pred = [p for p in usable if p.verdict]
    unpred = [p for p in usable if not p.verdict]
    out = GroupComparison(len(pred), len(unpred))
    if len(pred) < 2 or len(unpred) < 2:
        out.skipped = f"need >= 2 days per group, have {len(pred)} predictable and {len(unpred)} unpredictable"
        return out
    for name in characteristics:
        out.rows.append(compare_values(
            name,
            [float(getattr(p, name)) for p in pred],
            [float(getattr(p, name)) for p in unpred],
        ))
    return out
