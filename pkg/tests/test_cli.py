"""Tests for the command-line front end: exit codes, formats, determinism."""

import json

import numpy as np
import pytest

from paircalc import poly
from paircalc.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_no_arguments_is_usage_error(capsys):
    code, _, err = run(capsys, [])
    assert code == 2
    assert "usage" in err.lower()


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_counterexample_passes(capsys):
    code, out, _ = run(capsys, ["counterexample", "--m", "8", "--p", "inf",
                                "--deterministic"])
    assert code == 0
    body = json.loads(out)
    assert body["command"] == "counterexample"
    assert body["report"]["ratio"] > 1
    assert "timestamp" not in body


def test_timestamp_present_by_default(capsys):
    code, out, _ = run(capsys, ["counterexample", "--m", "2", "--p", "4"])
    assert code == 0
    assert "timestamp" in json.loads(out)


def test_lipschitz_sweep_passes(capsys):
    code, out, _ = run(capsys, ["lipschitz-sweep", "--trials", "5", "--dim", "4",
                                "--m", "2", "--p", "1.5", "--seed", "1",
                                "--deterministic"])
    assert code == 0
    assert json.loads(out)["report"]["summary"]["violations"] == 0


def test_invalid_p_is_config_error(capsys):
    code, _, err = run(capsys, ["lipschitz-sweep", "--trials", "5", "--dim", "4",
                                "--m", "2", "--p", "3", "--seed", "1"])
    assert code == 2
    assert "invalid configuration" in err


def test_csv_format_header(capsys):
    code, out, _ = run(capsys, ["lipschitz-sweep", "--trials", "3", "--dim", "4",
                                "--m", "2", "--p", "2", "--seed", "1",
                                "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "seed,m,dim,p,lhs,rhs,ratio"
    assert len(lines) == 4


def test_deterministic_reports_byte_identical(capsys):
    argv = ["verify-identities", "--trials", "3", "--dim", "4", "--m", "2",
            "--seed", "9", "--deterministic"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2


def test_env_seed_override(capsys, monkeypatch):
    monkeypatch.setenv("CONTRACTION_CALC_SEED", "123")
    code, out, _ = run(capsys, ["verify-identities", "--trials", "2", "--dim", "4",
                                "--m", "2", "--seed", "0", "--format", "csv"])
    assert code == 0
    assert out.strip().splitlines()[1].startswith("123,")


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, ["counterexample", "--m", "2", "--p", "inf",
                                "--deterministic", "--output", str(target)])
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["report"]["passed"] is True


def test_besov_norm_subcommand(capsys, tmp_path):
    rng = np.random.default_rng(0)
    c = rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4))
    src = tmp_path / "poly.json"
    src.write_text(json.dumps(poly.bi_to_dict(c)))
    code, out, _ = run(capsys, ["besov-norm", "--input", str(src),
                                "--deterministic"])
    assert code == 0
    report = json.loads(out)["report"]
    assert report["besov_norm"] > 0


def test_besov_norm_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, ["besov-norm", "--input", str(tmp_path / "nope.json")])
    assert code == 2
    assert "error" in err


def test_blowup_table_csv(capsys):
    code, out, _ = run(capsys, ["blowup-table", "--m-list", "4,8",
                                "--p-list", "4", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "seed,m,dim,p,lhs,rhs,ratio"
    assert len(lines) == 3
