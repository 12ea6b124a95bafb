import json

import numpy as np
import pytest

from opuczeros import cli, harness


def test_unknown_keys_rejected():
    with pytest.raises(harness.ConfigError):
        harness.ExperimentConfig.from_dict({"kind": "zeros", "family": {"name": "constant", "value": 0}, "n": 10, "bogus": 1})
    with pytest.raises(harness.ConfigError):
        harness.family_from_spec({"name": "bls", "C": 0.5, "b": 0.5, "extra": 1})
    with pytest.raises(harness.ConfigError):
        harness.family_from_spec({"name": "nope"})


def test_missing_required_fields():
    with pytest.raises(harness.ConfigError):
        harness.ExperimentConfig.from_dict({"kind": "poisson", "family": {"name": "constant", "value": 0}, "n": 10})
    with pytest.raises(harness.ConfigError):
        harness.ExperimentConfig.from_dict({"kind": "model", "n": 100})


def test_zeros_csv_schema(tmp_path):
    cfg = harness.ExperimentConfig.from_dict({
        "kind": "zeros", "family": {"name": "bls", "C": 0.5, "b": 0.5},
        "n": 20, "out": str(tmp_path)})
    assert harness.run(cfg) == 0
    lines = (tmp_path / "zeros_n20.csv").read_text().splitlines()
    assert lines[0] == "n,index,re,im,modulus,argument"
    assert len(lines) == 21
    row = lines[1].split(",")
    assert int(row[0]) == 20 and int(row[1]) == 0
    z = complex(float(row[2]), float(row[3]))
    assert abs(z) == pytest.approx(float(row[4]))


def test_report_embeds_hash_and_seed(tmp_path):
    cfg = harness.ExperimentConfig.from_dict({
        "kind": "model", "model": {"K": 1.0, "k": 1}, "n": 100,
        "seed": 9, "out": str(tmp_path)})
    assert harness.run(cfg) == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["seed"] == 9
    assert rep["config_hash"] == harness.config_hash(cfg)
    assert rep["passed"] is True


def test_reproducible_bytes(tmp_path):
    raw = {"kind": "poisson", "family": {"name": "disk_uniform", "rho": 0.5, "seed": 42},
           "n": 60, "trials": 200, "seed": 5,
           "intervals": [{"theta_anchor": 0.0, "a": 0.0, "b": 1.0}]}
    out1, out2 = tmp_path / "a", tmp_path / "b"
    harness.run(harness.ExperimentConfig.from_dict({**raw, "out": str(out1)}))
    harness.run(harness.ExperimentConfig.from_dict({**raw, "out": str(out2)}))
    assert (out1 / "poisson.csv").read_bytes() == (out2 / "poisson.csv").read_bytes()
    assert (out1 / "counts.csv").read_bytes() == (out2 / "counts.csv").read_bytes()


def test_config_file_roundtrip(tmp_path):
    path = tmp_path / "cfg.yaml"
    path.write_text(
        "kind: clock\nfamily: {name: bls, C: 0.5, b: 0.5}\nn_list: [50, 100]\n")
    cfg = harness.ExperimentConfig.from_file(str(path))
    assert cfg.kind == "clock" and cfg.n_list == (50, 100)
    # JSON is accepted too
    pj = tmp_path / "cfg.json"
    pj.write_text(json.dumps({"kind": "zeros", "family": {"name": "constant", "value": 0.0}, "n": 8}))
    assert harness.ExperimentConfig.from_file(str(pj)).n == 8


def test_figdata_outputs(tmp_path):
    cfg = harness.ExperimentConfig.from_dict({
        "kind": "figdata", "family": {"name": "bls", "C": 0.5, "b": 0.5},
        "n_list": [5, 10, 20, 50, 100, 200], "out": str(tmp_path)})
    assert harness.run(cfg) == 0
    spec = json.loads((tmp_path / "figure_spec.json").read_text())
    assert spec["layout"] == [2, 3]
    assert len(spec["csv"]) == 6
    assert spec["circles"] == [1.0, 0.5]
    for name in spec["csv"]:
        assert (tmp_path / name).exists()


def test_cli_exit_codes(tmp_path):
    assert cli.main(["model", "--out", str(tmp_path / "m")]) == 0
    bad = tmp_path / "bad.yaml"
    bad.write_text("kind: zeros\nn: 10\nwhat: 1\n")
    assert cli.main(["zeros", "--config", str(bad)]) == 1
    mismatch = tmp_path / "mm.yaml"
    mismatch.write_text("kind: clock\nfamily: {name: bls, C: 0.5, b: 0.5}\nn_list: [50]\n")
    assert cli.main(["zeros", "--config", str(mismatch)]) == 1


def test_clock_assertion_failure_exit(tmp_path):
    # an impossible sup_dev budget must yield exit status 2, not an exception
    cfg = harness.ExperimentConfig.from_dict({
        "kind": "clock", "family": {"name": "bls", "C": 0.5, "b": 0.5},
        "n_list": [50, 100], "tolerances": {"sup_dev_max": 1e-12},
        "out": str(tmp_path)})
    assert harness.run(cfg) == 2


def test_verify_quick_smoke(capsys):
    results = harness.verify_suite("quick")
    assert len(results) == 12
    assert all(r["passed"] for r in results)
    out = capsys.readouterr().out
    assert out.count("PASS") == 12
