import csv
import json
from pathlib import Path

import pytest

import ecm_bench

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def test_catalog_names_templates():
    cat = ecm_bench.list_experiments()
    assert len(cat) >= 7
    assert all((CONFIGS / e["config_template"]).exists() for e in cat)


def test_canonical_config_round_trip():
    text = ecm_bench.canonical_config("", "sinr-sweep")
    cfg = json.loads(text)
    assert cfg["run"]["trials"] == 200
    assert ecm_bench.canonical_config(text, "sinr-sweep") == text


def test_bad_key_raises():
    with pytest.raises(ecm_bench.EcmError):
        ecm_bench.canonical_config('{"sweep": {"subarays": [1]}}')


def test_prediction():
    r = ecm_bench.predict_false_targets(4, 500e3, 6150)
    assert r == pytest.approx([6150, 6075, 6000, 5925], abs=0.2)


def test_closed_form_matches_direct_at_zero_offset():
    d = ecm_bench.measurements(1, "sidelobe", offset_hz=0.0)
    c = ecm_bench.measurements(1, "sidelobe", offset_hz=0.0, method="closed_form")
    assert c["sinr_db"] == pytest.approx(d["sinr_db"], abs=1e-6)


def test_mf_profile_run(tmp_path):
    res = ecm_bench.run_experiment(CONFIGS / "mf_sf_q4.json", tmp_path, "mf-profile")
    assert res["passed"]
    with open(tmp_path / "mf_peaks_pa.csv") as f:
        rows = [r for r in csv.reader(f) if not r[0].startswith("#")]
    assert rows[0] == ["range_m", "power_db"]
    assert len(rows) >= 5


def test_sinr_sweep_deterministic(tmp_path):
    cfg = {"experiment": "sinr-sweep", "run": {"trials": 1, "seed": 3}}
    ecm_bench.run_experiment(cfg, tmp_path / "a")
    cfg["run"]["threads"] = 3
    ecm_bench.run_experiment(cfg, tmp_path / "b")
    assert (tmp_path / "a" / "sinr_sweep.csv").read_bytes() == (tmp_path / "b" / "sinr_sweep.csv").read_bytes()
