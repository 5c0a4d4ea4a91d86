import json
import random
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from uhfpredict.cli import main, parse_levels
from uhfpredict.sim import LambdaModelConfig, simulate_lambda

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "TEST_2022-08-01_34200000_57600000_message_1.csv"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_levels():
    assert parse_levels("1-3,10,2") == [1, 2, 3, 10]
    with pytest.raises(Exception):
        parse_levels("0")


def test_golden_day_records(capsys):
    code, out, _ = run(capsys, "test", "--input", GOLDEN)
    assert code == 0
    recs = json.loads(out)
    assert [r["test_kind"] for r in recs] == ["entropy-bias", "neyman-pearson"]
    keys = {"ticker", "date", "a", "test_kind", "n", "k", "statistic", "df", "p_value", "predictable"}
    assert keys <= set(recs[1])
    assert recs[1]["ticker"] == "TEST" and recs[1]["date"] == "2022-08-01"


def test_pair_mode(capsys):
    code, out, _ = run(capsys, "test", "--input", GOLDEN, "--k", "2", "--format", "csv")
    assert code == 0
    header, b, d = out.strip().splitlines()
    assert header.startswith("ticker,date,a,test_kind,")
    assert d.split(",")[header.split(",").index("df")] == "1"


def test_empty_day_is_insufficient(tmp_path, capsys):
    f = tmp_path / "EMPTY_2022-08-02_message.csv"
    f.write_text("")
    code, out, _ = run(capsys, "test", "--input", f)
    recs = json.loads(out)
    assert code == 0 and all(r["insufficient"] for r in recs) and recs[0]["p_value"] is None


def test_unreadable_input(capsys, tmp_path):
    code, _, err = run(capsys, "test", "--input", tmp_path / "missing.csv")
    assert code == 1 and "no such input" in err
    bad = tmp_path / "bad_message.csv"
    bad.write_text("1,2,3\n")
    code, _, err = run(capsys, "test", "--input", bad)
    assert code == 1 and ":1:" in err


def test_data_dir_env(monkeypatch, capsys):
    monkeypatch.setenv("UHFPREDICT_DATA_DIR", str(DATA))
    code, out, _ = run(capsys, "test")
    assert code == 0 and json.loads(out)[0]["ticker"] == "TEST"


def test_stdin_symbols():
    proc = subprocess.run([sys.executable, "-m", "uhfpredict", "test", "--symbols", "-"],
                          input="0101010101\n", capture_output=True, text=True, check=True)
    recs = json.loads(proc.stdout)
    assert recs[0]["statistic"] == pytest.approx(13.862943611198906, abs=1e-12)


def test_simulate_is_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        d = tmp_path / f"run{i}"
        assert main(["simulate", "--model", "ts", "--length", "100000", "--seed", "7", "--out", str(d)]) == 0
        outs.append((d / "ts_seed7.csv").read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].startswith(b"step,sign,price\n")
    assert json.loads((tmp_path / "run0" / "ts_seed7.config.json").read_text())["seed"] == 7


def test_simulate_bad_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"nope": 1}')
    code, _, err = run(capsys, "simulate", "--model", "lambda", "--config", cfg)
    assert code == 1 and "unknown" in err


def write_iid_corpus(root, days, n, seed):
    rng = random.Random(seed)
    root.mkdir()
    for d in range(days):
        month = 8 + d // 10
        text = "".join(rng.choice("01") for _ in range(n))
        (root / f"IID_2022-{month:02d}-{d % 10 + 1:02d}.txt").write_text(text)


def test_scan_iid_corpus(tmp_path, capsys):
    write_iid_corpus(tmp_path / "iid", 20, 10_000, seed=3)
    code, out, _ = run(capsys, "scan", "--input", tmp_path / "iid", "--agg", "1,5,10", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "month,a=1,a=5,a=10" and len(lines) == 3
    fractions = [float(v) for line in lines[1:] for v in line.split(",")[1:]]
    # 60 tests at level 0.01: a handful of rejections at most
    assert max(fractions) <= 0.2 and np.mean(fractions) <= 0.05


def test_scan_lambda_corpus(tmp_path, capsys):
    root = tmp_path / "lam"
    root.mkdir()
    for d in range(80):
        out = simulate_lambda(LambdaModelConfig(length=100_000, seed=1000 + d))
        text = "".join("1" if s > 0 else "0" for s in out.signs.tolist())
        (root / f"LAM_2022-{8 + d // 20:02d}-{d % 20 + 1:02d}.txt").write_text(text)
    code, out, _ = run(capsys, "scan", "--input", root, "--agg", "1", "--jobs", "2")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 4 and all(r["a=1"] == 1.0 for r in rows)


def sweep_day(path, seed, events=3000):
    """Executions of a random walk where some market orders sweep two or three levels at one timestamp."""
    rng = random.Random(seed)
    t = 34_200 * 10**9 + 10**6
    price = 1_000_000
    lines = []
    for _ in range(events):
        t += rng.randint(10**5, 10**7)
        d = rng.choice([-1, 1])
        levels = rng.choice([1, 1, 2, 3])
        for _ in range(levels):
            price += 100 * d
            sec, frac = divmod(t, 10**9)
            lines.append(f"{sec}.{frac:09d},4,{rng.randint(1, 10**8)},{rng.randint(1, 300)},{price},{-d}")
    path.write_text("\n".join(lines) + "\n")


def test_collapse_reduces_predictability(tmp_path, capsys):
    root = tmp_path / "sweeps"
    root.mkdir()
    for d in range(10):
        sweep_day(root / f"SWP_2022-08-{d + 1:02d}_message.csv", seed=d)
    fractions = {}
    for flag in ([], ["--collapse"]):
        code, out, _ = run(capsys, "scan", "--input", root, "--agg", "1", *flag)
        assert code == 0
        fractions[bool(flag)] = json.loads(out)[0]["a=1"]
    assert fractions[True] < fractions[False]


def test_localize_two_regime(capsys):
    code, out, _ = run(capsys, "localize", "--symbols", DATA / "two_regime.txt")
    assert code == 0
    rec = json.loads(out)[0]
    assert rec["best_S"] >= 2 and rec["test_kind"] == "sidak-partition"


def test_profile_outputs(tmp_path):
    root = tmp_path / "sweeps"
    root.mkdir()
    for d in range(4):
        sweep_day(root / f"SWP_2022-08-{d + 1:02d}_message.csv", seed=d, events=800)
    out = tmp_path / "out"
    assert main(["profile", "--input", str(root), "--out", str(out), "--format", "csv"]) == 0
    rows = (out / "profiles.csv").read_text().splitlines()
    assert len(rows) == 5 and "repeat_prob_scaled" in rows[0]
    assert (out / "comparison.csv").read_text().startswith("parameter,mean_predictable")


def test_calibrate_command(tmp_path):
    out = tmp_path / "cal"
    assert main(["calibrate", "--kind", "D", "--s", "2", "--n", "10000", "--seed", "1", "--out", str(out)]) == 0
    rep = json.loads((out / "calibration.json").read_text())
    assert rep["passed"] and rep["replications"] == 2000
    assert (out / "qq.csv").read_text().count("\n") == 100


def test_date_filter(tmp_path, capsys):
    write_iid_corpus(tmp_path / "iid", 12, 500, seed=4)
    code, out, _ = run(capsys, "test", "--input", tmp_path / "iid", "--from", "2022-08-05", "--to", "2022-09-01")
    dates = sorted({r["date"] for r in json.loads(out)})
    assert dates == [f"2022-08-{d:02d}" for d in range(5, 11)] + ["2022-09-01"]
