"""Config handling, subcommand execution, and run-directory contracts."""

import hashlib
import json
import math
import os

import pytest

from sqgbox import unit_mode, write_field
from sqgbox.cli import (
    DEFAULT_CONFIG,
    build_domain,
    default_config,
    load_config,
    run,
    validate_config,
)


def _write_cfg(tmp_path, overrides=None):
    cfg = {
        "domain": {"modes": [8, 8], "grid": [16, 16]},
        "refined_grid": [32, 32],
        "samples": {"mode_count": 8, "count": 2},
        "solver": {"dt": 1e-3, "horizon": 0.01, "snapshot_stride": 5},
        "duhamel": {"count": 2, "horizon": 0.01},
        "uniqueness": {"horizon": 0.02},
        "structure": {"pair_count": 1},
    }
    if overrides:
        for k, v in overrides.items():
            cfg[k] = v
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return str(path)


# -- config ----------------------------------------------------------------


def test_default_config_is_valid():
    assert validate_config(default_config()) == []


def test_default_config_deep_copied():
    cfg = default_config()
    cfg["solver"]["dt"] = 123.0
    assert DEFAULT_CONFIG["solver"]["dt"] != 123.0


def test_load_config_merges_and_overrides(tmp_path):
    path = _write_cfg(tmp_path)
    cfg = load_config(path, overrides=["solver.dt=0.002", "profile.sharpness=3"], seed=42)
    assert cfg["solver"]["dt"] == 0.002
    assert cfg["profile"]["sharpness"] == 3
    assert cfg["solver"]["horizon"] == 0.01  # from file
    assert cfg["battery"]["pairs"] == [[2, 2], [3, 6], [6, 3]]  # default preserved
    assert cfg["seed"] == 42 and cfg["samples"]["seed"] == 42


def test_load_config_string_override(tmp_path):
    path = _write_cfg(tmp_path)
    cfg = load_config(path, overrides=["solver.scheme=IF-Euler"])
    assert cfg["solver"]["scheme"] == "IF-Euler"
    with pytest.raises(ValueError):
        load_config(path, overrides=["solver.dt"])


def test_validate_config_flags_violations():
    cfg = default_config()
    cfg["solver"]["dt"] = -1.0
    cfg["profile"]["sharpness"] = 9
    cfg["battery"]["s"] = [0.0, 2.5]
    cfg["domain"]["grid"] = [16, 16]  # cannot resolve 32 modes
    out = validate_config(cfg)
    assert len(out) >= 4
    assert any("sharpness" in v for v in out)
    assert any("2.5" in v for v in out)


def test_build_domain_uses_grid_argument():
    cfg = default_config()
    d = build_domain(cfg, grid=[128, 96])
    assert (d.N1, d.N2) == (128, 96)
    assert (d.M1, d.M2) == (32, 32)


# -- subcommand runs -------------------------------------------------------


def test_simulate_run_and_manifest(tmp_path):
    cfg = _write_cfg(tmp_path)
    out = tmp_path / "out"
    code = run(["simulate", "--config", cfg, "--out", str(out)])
    assert code == 0
    man = json.loads((out / "manifest.json").read_text())
    assert set(man) == {"version", "config_sha256", "files"}
    assert "runlog.txt" not in man["files"]
    assert "manifest.json" not in man["files"]
    assert "simulate.json" in man["files"]
    for rel, meta in man["files"].items():
        data = (out / rel).read_bytes()
        assert hashlib.sha256(data).hexdigest() == meta["sha256"]
        assert len(data) == meta["bytes"]
    assert (out / "runlog.txt").exists()
    summary = json.loads((out / "simulate.json").read_text())
    assert summary["energy_nonincreasing"] is True


def test_runs_are_deterministic(tmp_path):
    cfg = _write_cfg(tmp_path)
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(["verify-structure", "--config", cfg, "--out", str(a)]) == 0
    assert run(["verify-structure", "--config", cfg, "--out", str(b)]) == 0
    ma = json.loads((a / "manifest.json").read_text())["files"]
    mb = json.loads((b / "manifest.json").read_text())["files"]
    del ma["config.json"], mb["config.json"]  # embeds output_dir
    assert ma == mb


def test_verify_bilinear_run(tmp_path):
    cfg = _write_cfg(tmp_path)
    out = tmp_path / "bl"
    assert run(["verify-bilinear", "--config", cfg, "--out", str(out)]) == 0
    rows = (out / "bilinear_ratios.csv").read_text().strip().splitlines()
    header = rows[0].split(",")
    assert header[:4] == ["s", "p1", "p2", "q"]
    payload = json.loads((out / "bilinear.json").read_text())
    assert len(payload) == len(rows) - 1
    assert all(r["stable"] for r in payload if not r["details"]["probe"])


def test_verify_uniqueness_run(tmp_path):
    cfg = _write_cfg(tmp_path)
    out = tmp_path / "un"
    assert run(["verify-uniqueness", "--config", cfg, "--out", str(out)]) == 0
    rep = json.loads((out / "uniqueness.json").read_text())
    assert rep["shrink_factor"] >= 3.5
    assert rep["cross_scheme_relative_distance"] <= 1e-5


def test_besov_norm_from_field_file(tmp_path):
    cfg_path = _write_cfg(tmp_path)
    cfg = load_config(cfg_path)
    field = unit_mode(build_domain(cfg), 1, 1)
    field_file = tmp_path / "theta.field"
    write_field(field_file, field)
    out = tmp_path / "bn"
    code = run(
        ["besov-norm", "--config", cfg_path, "--out", str(out),
         "--set", f'field_file="{field_file}"']
    )
    assert code == 0
    rep = json.loads((out / "besov.json").read_text())
    assert rep["value"] > 0.0
    assert (out / "besov_profile.csv").exists()


def test_invalid_config_exits_2(tmp_path, capsys):
    cfg = _write_cfg(tmp_path)
    code = run(["simulate", "--config", cfg, "--set", "solver.dt=-1", "--out", str(tmp_path / "x")])
    assert code == 2
    assert "violation" in capsys.readouterr().err


def test_missing_config_exits_2(tmp_path):
    assert run(["simulate", "--config", str(tmp_path / "nope.json")]) == 2


def test_malformed_json_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["simulate", "--config", str(bad)]) == 2


def test_seed_flag_changes_samples(tmp_path):
    cfg_path = _write_cfg(tmp_path)
    a = load_config(cfg_path, seed=1)
    b = load_config(cfg_path, seed=2)
    assert a["samples"]["seed"] == 1 and b["samples"]["seed"] == 2


def test_runlog_holds_timestamps_and_reports_do_not(tmp_path):
    cfg = _write_cfg(tmp_path)
    out = tmp_path / "log"
    assert run(["verify-structure", "--config", cfg, "--out", str(out)]) == 0
    log = (out / "runlog.txt").read_text()
    assert "start" in log and "done" in log
    # ISO date prefix on every line
    for line in log.strip().splitlines():
        assert line[:4].isdigit() and line[4] == "-"
    report = (out / "structure.json").read_text()
    assert "20" not in json.loads(report)[0].keys()
