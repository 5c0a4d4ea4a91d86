"""Command-line entry point: ``uhfpredict <command> [options]``.

Commands
--------
test       entropy-bias and NP tests per day (or one symbol stream)
scan       fraction of predictable days per month and aggregation level
localize   Sidak-corrected partition scan per day
profile    per-day characteristics and the predictable/unpredictable comparison
simulate   run a microstructure model and write its trades
calibrate  Monte Carlo check of the chi-square law of B or D

Exit status is 0 when the run completes, whatever the verdicts; 1 on a
runtime error (unreadable input, bad data); 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from . import __version__
from .calibration import calibrate
from .dayprofile import compare_groups
from .pipeline import (
    Day,
    day_tests,
    discover,
    load_day,
    localize_day,
    predictable_fraction_table,
    profile_record,
    read_symbol_text,
)
from .sim import MODELS, config_from_dict, config_to_json
from .stattests import DEFAULT_ALPHA

DATA_DIR_ENV = "UHFPREDICT_DATA_DIR"


class CliError(Exception):
    pass


# ---------------------------------------------------------------- argument types


def _alpha(text: str) -> float:
    v = float(text)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError("alpha must lie in (0, 1)")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be an integer >= 1")
    return v


def parse_levels(text: str) -> list[int]:
    """``"1,5,10"`` or ``"1-50"`` or a mix, e.g. ``"1-5,10"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = (int(v) for v in part.split("-", 1))
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("aggregation levels must be integers >= 1")
    return sorted(set(out))


def _probs(text: str) -> list[float]:
    return [float(v) for v in text.split(",")]


# ---------------------------------------------------------------- output


def _to_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return v


def json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _json_safe(v):
    # NaN is not valid JSON; emit null
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_json_safe(x) for x in v]
    return v


def render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_json_safe(records), indent=2, default=json_default) + "\n"
    buf = io.StringIO()
    keys: list[str] = []
    for r in records:
        keys.extend(k for k in r if k not in keys)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    for r in records:
        w.writerow([_to_cell(r.get(k)) for k in keys])
    return buf.getvalue()


def emit(args, name: str, records: list[dict], fmt: str | None = None, primary: bool = True):
    """Write ``<out>/<name>.<fmt>``, or print the primary table when no ``--out`` is given."""
    fmt = fmt or args.format
    text = render(records, fmt)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.{fmt}").write_text(text)
    elif primary:
        sys.stdout.write(text)


# ---------------------------------------------------------------- inputs


def _input_paths(args) -> list[Path]:
    inputs = args.input or ([os.environ[DATA_DIR_ENV]] if os.environ.get(DATA_DIR_ENV) else [])
    if not inputs:
        raise CliError(f"no input: give --input, --symbols or set {DATA_DIR_ENV}")
    try:
        files = discover(inputs, args.date_from, args.date_to)
    except FileNotFoundError as exc:
        raise CliError(str(exc)) from None
    if not files:
        raise CliError("no input files found")
    return files


def _symbol_day(args) -> Day:
    src = args.symbols
    try:
        text = sys.stdin.read() if src == "-" else Path(src).read_text()
        seq = read_symbol_text(text, args.alphabet)
    except (OSError, ValueError) as exc:
        raise CliError(f"{src}: {exc}") from None
    label = "stdin" if src == "-" else Path(src).stem
    return Day(args.ticker or "", label, symbols=seq, source=src)


def _load(path, collapse, ticker) -> Day:
    return load_day(path, collapse=collapse, ticker=ticker)


def _map(args, fn, items):
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _days_job(path, collapse, ticker, levels, task, alpha, k):
    day = _load(path, collapse, ticker)
    out = []
    for a in levels:
        if task == "test":
            recs = day_tests(day, a, alpha, k)
            for r in recs:
                r["month"] = day.month
            out.extend(recs)
        elif task == "localize":
            out.append(localize_day(day, a, alpha))
        elif task == "profile":
            out.append(profile_record(day, a, alpha, k))
    return out


def _run_days(args, task: str, levels: list[int]) -> list:
    if getattr(args, "symbols", None):
        day = _symbol_day(args)
        if task == "test":
            return [r for a in levels for r in day_tests(day, a, args.alpha, args.k)]
        if task == "localize":
            return [localize_day(day, a, args.alpha) for a in levels]
        raise CliError("profiling needs price data, not a symbol stream")
    files = _input_paths(args)
    job = partial(_days_job, collapse=args.collapse, ticker=args.ticker, levels=levels,
                  task=task, alpha=args.alpha, k=getattr(args, "k", None))
    results = _map(args, job, files)
    return [r for day in results for r in day]


# ---------------------------------------------------------------- commands


def cmd_test(args) -> None:
    records = _run_days(args, "test", [args.agg])
    for r in records:
        r.pop("month", None)
    emit(args, "tests", records)


def cmd_scan(args) -> None:
    levels = args.agg_levels
    records = _run_days(args, "test", levels)
    months = sorted({r["month"] for r in records})
    table = predictable_fraction_table(records, months, levels)
    emit(args, "scan_fractions", table)
    emit(args, "scan_records", records, primary=False)


def cmd_localize(args) -> None:
    emit(args, "localize", _run_days(args, "localize", [args.agg]))


def cmd_profile(args) -> None:
    pairs = _run_days(args, "profile", [args.agg])
    records = [r for r, _ in pairs]
    comparison = compare_groups([p for _, p in pairs])
    emit(args, "profiles", records)
    rows = [{"parameter": "sample_size", "mean_predictable": comparison.n_predictable,
             "mean_unpredictable": comparison.n_unpredictable, "p_value": None,
             "stars": "", "direction": ""}]
    rows += [{"parameter": r.name, "mean_predictable": r.mean_predictable,
              "mean_unpredictable": r.mean_unpredictable, "p_value": r.p_value,
              "stars": r.stars, "direction": r.direction} for r in comparison.rows]
    if comparison.skipped:
        rows.append({"parameter": "skipped", "mean_predictable": None, "mean_unpredictable": None,
                     "p_value": None, "stars": "", "direction": comparison.skipped})
    emit(args, "comparison", rows, primary=False)
    if not args.out and comparison.skipped:
        print(f"comparison skipped: {comparison.skipped}", file=sys.stderr)


def cmd_simulate(args) -> None:
    cls, fn = MODELS[args.model]
    data = json.loads(Path(args.config).read_text()) if args.config else {}
    if args.length is not None:
        data["length"] = args.length
    if args.seed is not None:
        data["seed"] = args.seed
    try:
        cfg = config_from_dict(cls, data)
    except (TypeError, ValueError) as exc:
        raise CliError(f"bad {args.model} configuration: {exc}") from None
    out = fn(cfg)
    text = out.to_csv()
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        name = args.name or f"{args.model}_seed{cfg.seed}"
        (d / f"{name}.csv").write_text(text)
        (d / f"{name}.config.json").write_text(config_to_json(cfg) + "\n")
    else:
        sys.stdout.write(text)


def cmd_calibrate(args) -> None:
    try:
        report = calibrate(args.kind, args.s, args.n, args.probs, args.replications, args.seed,
                           args.k, jobs=args.jobs)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        (d / "calibration.json").write_text(report.to_json() + "\n")
        (d / "qq.csv").write_text(report.qq_csv())
    else:
        sys.stdout.write(report.to_json() + "\n")


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uhfpredict", description="Predictability tests for symbolized tick data.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output directory (default: primary table to stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--input", action="append", help=f"file or directory (repeatable; default ${DATA_DIR_ENV})")
    data.add_argument("--ticker", help="override the ticker taken from file names")
    data.add_argument("--from", dest="date_from", help="first date (YYYY-MM-DD, inclusive)")
    data.add_argument("--to", dest="date_to", help="last date (inclusive)")
    data.add_argument("--alpha", type=_alpha, default=DEFAULT_ALPHA)
    data.add_argument("--collapse", action="store_true", help="merge executions sharing a timestamp")

    symbols = argparse.ArgumentParser(add_help=False)
    symbols.add_argument("--symbols", help="symbol stream file, '-' for stdin (replaces --input)")
    symbols.add_argument("--alphabet", type=int, default=None, help="alphabet size for --symbols")

    t = sub.add_parser("test", parents=[common, data, symbols], help="B and D tests per day")
    t.add_argument("--agg", type=_positive_int, default=1, help="aggregation level a")
    t.add_argument("--k", type=int, default=None, help="block length override (2 = pair analysis)")
    t.set_defaults(func=cmd_test)

    s = sub.add_parser("scan", parents=[common, data], help="predictable fraction per month and level")
    s.add_argument("--agg", dest="agg_levels", type=parse_levels, default=[1], help="levels, e.g. 1,5,10 or 1-50")
    s.add_argument("--k", type=int, default=None)
    s.set_defaults(func=cmd_scan)

    lo = sub.add_parser("localize", parents=[common, data, symbols], help="Sidak partition scan")
    lo.add_argument("--agg", type=_positive_int, default=1)
    lo.set_defaults(func=cmd_localize)

    pr = sub.add_parser("profile", parents=[common, data], help="day characteristics and group comparison")
    pr.add_argument("--agg", type=_positive_int, default=1)
    pr.add_argument("--k", type=int, default=None)
    pr.set_defaults(func=cmd_profile)

    sm = sub.add_parser("simulate", parents=[common], help="run a microstructure model")
    sm.add_argument("--model", choices=sorted(MODELS), required=True)
    sm.add_argument("--length", type=_positive_int, default=None)
    sm.add_argument("--config", help="JSON file of model parameters")
    sm.add_argument("--name", help="output file stem (with --out)")
    sm.set_defaults(func=cmd_simulate)

    c = sub.add_parser("calibrate", parents=[common], help="chi-square calibration of B or D")
    c.add_argument("--kind", choices=("B", "D"), required=True)
    c.add_argument("--s", type=int, default=2)
    c.add_argument("--n", type=_positive_int, default=10_000)
    c.add_argument("--probs", type=_probs, default=None, help="comma-separated symbol probabilities")
    c.add_argument("--replications", "-N", type=_positive_int, default=2000)
    c.add_argument("--k", type=int, default=None)
    c.set_defaults(func=cmd_calibrate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"uhfpredict {args.command}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"uhfpredict {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0
