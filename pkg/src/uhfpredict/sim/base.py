from __future__ import annotations

import csv
import dataclasses
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


@dataclass
class SimOutput:
    """Trade signs in {-1, +1} and, for models that produce them, trade prices."""

    signs: np.ndarray
    prices: np.ndarray | None = None
    model: str = ""
    extra: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return int(self.signs.size)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "sign", "price"])
        prices = self.prices.tolist() if self.prices is not None else None
        for i, sg in enumerate(self.signs.tolist()):
            w.writerow([i, sg, repr(prices[i]) if prices is not None else ""])
        return buf.getvalue()

    def write_csv(self, path):
        Path(path).write_text(self.to_csv())

    @classmethod
    def read_csv(cls, path) -> "SimOutput":
        signs, prices = [], []
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                signs.append(int(row["sign"]))
                prices.append(float(row["price"]) if row["price"] else None)
        p = None if not prices or prices[0] is None else np.array(prices, dtype=float)
        return cls(np.array(signs, dtype=np.int8), p)


def config_from_dict(cls, data: dict):
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ValueError(f"unknown {cls.__name__} fields: {sorted(unknown)}")
    return cls(**data)


def load_config(cls, path):
    return config_from_dict(cls, json.loads(Path(path).read_text()))


def config_to_json(cfg) -> str:
    return json.dumps(dataclasses.asdict(cfg), indent=2, sort_keys=True)
