"""Config ingestion, suite orchestration, reports, tables, exit codes."""

import csv
import json

import pytest

from dualracah.cli import main
from dualracah.errors import ConfigError
from dualracah.report import load_config, parse_config, run_suite

BASE_CFG = {
    "family": "R", "N": 5, "b": "10", "c": "1/2", "d": "2/5",
    "D": [1], "Y": ["1"],
}


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_parse_round_trip():
    cfg = parse_config(dict(BASE_CFG))
    assert cfg.family == "R" and cfg.N == 5
    assert cfg.D == (1,) and cfg.Y.degree == 0
    assert cfg.precision == 256


@pytest.mark.parametrize("mutation,msg", [
    ({"frobnicate": 1}, "unknown config keys"),
    ({"family": "X"}, "family"),
    ({"N": 0}, "N"),
    ({"b": 10}, "rational string"),
    ({"q": "1/2"}, "only valid"),
    ({"Y": []}, "non-empty"),
    ({"Y": ["0"]}, "nonzero"),
    ({"suites": ["base", "frob"]}, "unknown suites"),
    ({"precision": 10}, "precision"),
    ({"D": [2, 1]}, "increasing"),
])
def test_bad_configs_rejected(mutation, msg):
    data = dict(BASE_CFG)
    data.update(mutation)
    with pytest.raises(ConfigError, match=msg):
        parse_config(data)


def test_zero_denominator_is_config_error():
    data = dict(BASE_CFG)
    data["d"] = "3/0"
    with pytest.raises(ConfigError, match="zero denominator"):
        parse_config(data)


def test_qlimit_requires_additive_family():
    data = dict(BASE_CFG, family="qR", b="1/2048", q="1/2",
                suites=["qlimit"])
    with pytest.raises(ConfigError):
        parse_config(data)


def test_verify_full_run(tmp_path):
    cfg_path = _write(tmp_path, "cfg.json", dict(BASE_CFG, suites=[
        "base", "mi", "recurrence", "dual", "closure", "ladder",
        "commute", "shape", "qlimit",
    ]))
    out = str(tmp_path / "report.json")
    assert main(["verify", "--config", cfg_path, "--out", out]) == 0
    report = json.loads(open(out).read())
    assert report["pass"] is True
    assert set(report["suites"]) == {
        "base", "mi", "recurrence", "dual", "closure", "ladder",
        "commute", "shape", "qlimit",
    }
    assert report["suites"]["shape"]["shape_invariant"] is False


def test_reports_are_byte_deterministic(tmp_path):
    cfg_path = _write(tmp_path, "cfg.json", dict(BASE_CFG, suites=["mi", "dual"]))
    out1, out2 = str(tmp_path / "r1.json"), str(tmp_path / "r2.json")
    assert main(["verify", "--config", cfg_path, "--out", out1]) == 0
    assert main(["verify", "--config", cfg_path, "--out", out2]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()


def test_degenerate_ladder_is_pass_with_note(tmp_path):
    cfg_path = _write(
        tmp_path, "cfg.json",
        dict(BASE_CFG, Y=["0", "1"], suites=["recurrence", "closure", "ladder"]),
    )
    out = str(tmp_path / "report.json")
    assert main(["verify", "--config", cfg_path, "--out", out]) == 0
    report = json.loads(open(out).read())
    assert report["suites"]["ladder"]["pass"] is True
    assert "degenerate" in report["suites"]["ladder"]["note"]


def test_malformed_q_exits_2(tmp_path):
    cfg_path = _write(
        tmp_path, "cfg.json",
        dict(BASE_CFG, family="qR", b="1/2048", q="3/0"),
    )
    assert main(["verify", "--config", cfg_path]) == 2


def test_inadmissible_params_exit_2(tmp_path):
    cfg_path = _write(tmp_path, "cfg.json", dict(BASE_CFG, b="5"))
    assert main(["verify", "--config", cfg_path]) == 2


def test_missing_config_exits_2(tmp_path):
    assert main(["verify", "--config", str(tmp_path / "nope.json")]) == 2


def test_qr_full_run(tmp_path):
    cfg = {
        "family": "qR", "N": 4, "b": "1/512", "c": "1/2", "d": "2/5",
        "q": "1/2", "D": [1], "Y": ["1"],
        "suites": ["base", "mi", "recurrence", "dual", "closure", "ladder"],
    }
    cfg_path = _write(tmp_path, "cfg.json", cfg)
    assert main(["verify", "--config", cfg_path, "--out", str(tmp_path / "r.json")]) == 0


def test_tables_emission(tmp_path):
    cfg_path = _write(tmp_path, "cfg.json", dict(BASE_CFG))
    out = str(tmp_path / "tabs")
    for what in ("polys", "rnk", "hamiltonian", "spectrum", "dual"):
        assert main(["tables", "--config", cfg_path, "--what", what, "--out", out]) == 0
        with open(f"{out}/{what}.csv") as f:
            rows = list(csv.reader(f))
        assert len(rows) > 1 and rows[0][0] in ("n", "x")
        json.loads(open(f"{out}/{what}.json").read())


def test_spectrum_table_contents(tmp_path):
    cfg_path = _write(tmp_path, "cfg.json", dict(BASE_CFG))
    out = str(tmp_path / "tabs")
    main(["tables", "--config", cfg_path, "--what", "spectrum", "--out", out])
    with open(f"{out}/spectrum.csv") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["n", "X"]
    assert len(rows) == 7  # header + N+1 levels
    assert rows[1] == ["0", "0/1"]


def test_precision_override(tmp_path):
    cfg_path = _write(tmp_path, "cfg.json", dict(BASE_CFG))
    cfg = load_config(cfg_path)
    cfg.precision = 128
    report, ok = run_suite(cfg)
    assert ok and report["config"]["precision"] == 128
    assert main(["verify", "--config", cfg_path, "--precision", "10"]) == 2
