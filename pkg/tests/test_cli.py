import json
import subprocess
import sys
from fractions import Fraction

import pytest

from tightdesign import cli
from tightdesign.search import SearchReport


def run(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = cli.main([*argv, "--out", str(out)])
    return code, json.loads(out.read_text())


def test_tables_for_one_s(tmp_path):
    code, doc = run(tmp_path, "tables", "--s", "5")
    assert code == 0
    (tb,) = doc["tables"]
    assert tb["s"] == 5 and tb["ok"]
    assert doc["manifest"]["digests"]["report"] == cli.digest({k: v for k, v in doc.items() if k != "manifest"})


def test_sieve_and_derive(tmp_path):
    code, doc = run(tmp_path, "s4", "sieve", "--primes", "7,11")
    assert code == 0
    assert [r["p"] for r in doc["rows"]] == [7, 11]
    code, doc = run(tmp_path, "s4", "derive")
    assert code == 0 and doc["matches_stored"] and doc["degrees"] == [12, 11]


def test_small_scan_exits_zero(tmp_path):
    code, doc = run(tmp_path, "s4", "scan", "--kmin", "9", "--kmax", "300")
    assert code == 0 and doc["solutions"] == []


def test_reports_are_deterministic_modulo_timing(tmp_path):
    a = run(tmp_path, "search", "--s", "5", "--beta0", "6")[1]
    b = run(tmp_path, "search", "--s", "5", "--beta0", "6", "--jobs", "2")[1]
    assert cli.strip_timing(a)["survivors"] == cli.strip_timing(b)["survivors"]
    assert a["manifest"]["digests"] == b["manifest"]["digests"]


def test_search_csv(tmp_path):
    csv = tmp_path / "hits.csv"
    code, doc = run(tmp_path, "search", "--s", "5", "--beta0", "8", "--csv", str(csv))
    assert code == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == "alpha,n,k,v,failures"
    assert len(lines) == 1 + len(doc["hits"])


def test_survivor_exit_code(tmp_path, monkeypatch):
    fake = SearchReport(5, Fraction(6), Fraction(1, 2), 1, 1, 1, [], [{"k": 1, "v": 1}], 0.0)
    monkeypatch.setattr(cli, "run_one_search", lambda *a, **k: fake)
    code, _ = run(tmp_path, "search", "--s", "5", "--beta0", "6")
    assert code == cli.EXIT_SURVIVOR


def test_config_file_and_env(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\njobs = 3\nmode = certified\n")
    monkeypatch.delenv(cli.JOBS_ENV, raising=False)
    assert cli.default_jobs(cli.read_config(str(cfg))) == 3
    monkeypatch.setenv(cli.JOBS_ENV, "5")
    assert cli.default_jobs(cli.read_config(str(cfg))) == 5
    monkeypatch.setenv(cli.JOBS_ENV, "zero")
    with pytest.raises(cli.ConfigError):
        cli.default_jobs({})


def test_bad_config_is_an_operational_error(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert cli.main(["--config", str(cfg), "tables", "--s", "2"]) == cli.EXIT_ERROR
    assert "bad.cfg:1" in capsys.readouterr().err


def test_corrupt_checkpoint_is_an_error(tmp_path, capsys):
    ck = tmp_path / "c.ckpt"
    ck.write_text("junk\n")
    assert cli.main(["search", "--s", "5", "--beta0", "6", "--checkpoint", str(ck)]) == cli.EXIT_ERROR
    assert ":1:" in capsys.readouterr().err


def test_strip_timing():
    doc = {"a": 1, "seconds": 3.2, "x": [{"timing": {}, "b": 2}]}
    assert cli.strip_timing(doc) == {"a": 1, "x": [{"b": 2}]}


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "tightdesign.cli", "s4", "sieve", "--primes", "7"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rows"][0]["p"] == 7
