import csv
import json

import pytest

from comonotone.cli import build_parser, main

HEADER = ["n", "E_estimate", "omega", "ratio", "regime", "expected", "observed"]


def test_ratio_writes_csv_and_summary(tmp_path):
    out = tmp_path / "ratio.csv"
    rc = main(["--seed", "7", "ratio", "--model", "corpus-s1", "--r", "1", "--k", "2",
               "--ns", "8,16,32", "--out", str(out)])
    assert rc == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == HEADER and [int(r[0]) for r in rows[1:]] == [8, 16, 32]
    summary = json.loads(out.with_suffix(".json").read_text())
    assert summary["seed"] == 7 and len(summary["config_hash"]) == 16
    assert summary["cells"][0]["observed"] == "bounded"


def test_approx_to_stdout(capsys):
    assert main(["approx", "--model", "sin", "--n", "3", "--comonotone"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split(",") == HEADER
    assert float(lines[1].split(",")[1]) < 1e-8


def test_counterexample_exit_code(tmp_path):
    out = tmp_path / "cx.csv"
    assert main(["counterexample", "--theorem", "T2_7", "--s", "2", "--ns", "8,16,32",
                 "--out", str(out)]) == 0
    summary = json.loads(out.with_suffix(".json").read_text())
    assert summary["cells"][0]["passes"]


def test_check_lemmas_seed_after_subcommand(capsys, tmp_path):
    out = tmp_path / "lemmas.json"
    assert main(["check-lemmas", "--seed", "3", "--count", "50", "--out", str(out)]) == 0
    assert "FAIL" not in capsys.readouterr().out
    assert json.loads(out.read_text())["seed"] == 3


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"seed": 11}))
    out = tmp_path / "l.json"
    assert main(["--config", str(cfg), "check-lemmas", "--count", "10", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["seed"] == 11


def test_bad_arguments():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["ratio", "--model", "nope", "--r", "1", "--k", "1"])
    with pytest.raises(SystemExit):
        build_parser().parse_args(["ratio", "--model", "sin", "--r", "1", "--k", "1",
                                   "--ns", "8,x"])


def test_ratio_takes_ns_from_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"ns": [8, 16]}))
    assert main(["--config", str(cfg), "ratio", "--model", "sin", "--r", "0", "--k", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert [int(v.split(",")[0]) for v in lines[1:]] == [8, 16]
