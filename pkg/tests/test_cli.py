import json

import numpy as np
import pytest

from fouriercat import cli


def run(args):
    return cli.main(args)


def test_verify_default_passes(capsys):
    assert run(["verify"]) == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out
    assert "[FAIL]" not in out


def test_verify_starved_cutoff_fails(capsys):
    assert run(["verify", "--cutoff", "5"]) == 1
    out = capsys.readouterr().out
    assert "constellation_tail_mass" in out
    assert "FAILED" in out


def test_verify_degenerate_phi_is_config_error(capsys):
    assert run(["verify", "--phi", "0"]) == 2
    assert "degenerate" in capsys.readouterr().err


def test_unknown_group_is_config_error():
    assert run(["verify", "--group", "e8"]) == 2


def test_bad_gamma_is_config_error():
    assert run(["sweep-alpha", "--gamma", "1.5"]) == 2


def test_sweep_alpha_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    args = [
        "sweep-alpha",
        "--gamma", "0.01",
        "--grid", "1.1:1.4:0.05",
        "--out", str(out),
    ]
    assert run(args) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "alpha,infidelity,condition_number,flags"
    assert len(lines) == 8
    first = lines[1].split(",")
    assert float(first[0]) == 1.1
    assert 0.0 < float(first[1]) < 1.0
    assert "argmin alpha" in capsys.readouterr().out
    # identical configs produce identical bytes
    out2 = tmp_path / "sweep2.csv"
    run(args[:-1] + [str(out2)])
    assert out.read_bytes() == out2.read_bytes()


def test_sweep_alpha_lossless(tmp_path):
    out = tmp_path / "lossless.csv"
    assert run(
        ["sweep-alpha", "--gamma", "0", "--grid", "1.0:1.3:0.1", "--out", str(out)]
    ) == 0
    rows = out.read_text(encoding="utf-8").splitlines()[1:]
    assert all(float(r.split(",")[1]) <= 1e-12 for r in rows)


def test_sweep_gamma_json(tmp_path, capsys):
    out = tmp_path / "sweep.json"
    assert run(
        [
            "sweep-gamma",
            "--grid", "1e-3:1e-2:6",
            "--format", "json",
            "--out", str(out),
        ]
    ) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert set(payload) == {"config", "records", "summary"}
    assert len(payload["records"]) == 6
    assert set(payload["records"][0]) == {"gamma", "infidelity"}
    assert payload["summary"]["monotone"] is True
    assert np.isfinite(payload["summary"]["loglog_slope"])
    assert "log-log slope" in capsys.readouterr().out


def test_empty_grid_is_config_error():
    assert run(["sweep-gamma", "--grid", ""]) == 2


def test_unwritable_path_is_io_error(tmp_path):
    target = tmp_path / "missing" / "x.csv"
    assert run(["sweep-alpha", "--grid", "1.2:1.3:0.1", "--out", str(target)]) == 3


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"gamma": 0.02, "grid": "1.2:1.3:0.1"}))
    out = tmp_path / "out.csv"
    assert run(
        ["sweep-alpha", "--config", str(cfg), "--gamma", "0.03", "--out", str(out)]
    ) == 0
    # flag wins over the file; both appear in a json run for inspection
    out_json = tmp_path / "out.json"
    assert run(
        [
            "sweep-alpha",
            "--config", str(cfg),
            "--gamma", "0.03",
            "--format", "json",
            "--out", str(out_json),
        ]
    ) == 0
    payload = json.loads(out_json.read_text(encoding="utf-8"))
    assert payload["config"]["gamma"] == 0.03


def test_config_file_unknown_key(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"alpha": 1.2, "mystery": 1}))
    assert run(["verify", "--config", str(cfg)]) == 2


def test_gates_demo(capsys):
    assert run(["gates-demo"]) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out
    assert "composite Hadamard" in out
    assert "Zeno" in out


def test_gates_demo_rejects_cyclic_group():
    assert run(["gates-demo", "--group", "z8"]) == 2
