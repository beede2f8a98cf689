"""The command-line front end: configs, commands, suites, exit codes."""

import json

import pytest

from quadcodes.cli import (EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_OK,
                           load_config, main, run_suites, suite_tables)
from quadcodes.errors import ConfigError

MINIMAL = {
    "field1": {"p": 3, "s": 1},
    "field2": {"s": 1},
    "form_f": {"kind": "gram", "rows": [[1]]},
    "form_g": {"kind": "gram", "rows": [[2]]},
}

ODD_CASE = {
    "field1": {"p": 3, "s": 2},
    "field2": {"s": 1},
    "form_f": {"kind": "trace_poly", "coeffs": [[1, 0]]},
    "form_g": {"kind": "gram", "rows": [[1]]},
}


def write_config(tmp_path, payload, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


# -- config loading -------------------------------------------------------------------

def test_load_config_minimal(tmp_path):
    cfg = load_config(write_config(tmp_path, MINIMAL))
    assert cfg.field1.p == 3 and cfg.field2.s == 1
    assert cfg.f.rank_sign() == (1, 1)
    assert cfg.g.rank_sign() == (1, -1)
    resolved = cfg.resolved()
    assert resolved["field1"]["modulus"] == [0, 1]  # auto-selected, embedded
    assert resolved["form_f"] == {"kind": "gram", "rows": [[1]]}


def test_load_config_trace_poly(tmp_path):
    cfg = load_config(write_config(tmp_path, ODD_CASE))
    assert cfg.f.gram == ((2, 0), (0, 1))
    assert cfg.resolved()["field1"]["modulus"] == [1, 0, 1]


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(str(bad))
    incomplete = dict(MINIMAL)
    del incomplete["form_g"]
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, incomplete, "inc.json"))
    weird = dict(MINIMAL, form_f={"kind": "mystery"})
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, weird, "weird.json"))


def test_reducible_modulus_exit_code(tmp_path, capsys):
    payload = dict(ODD_CASE, field1={"p": 3, "s": 2, "modulus": [0, 0, 1]})
    path = write_config(tmp_path, payload)
    rc = main(["build", "--config", path, "--out", str(tmp_path / "out")])
    assert rc == EXIT_CONFIG
    assert "reducible" in capsys.readouterr().err.lower()


def test_missing_config_exit_code(tmp_path):
    assert main(["build", "--config", str(tmp_path / "nope.json"),
                 "--out", str(tmp_path)]) == EXIT_CONFIG


# -- commands -------------------------------------------------------------------------

def test_build_minimal(tmp_path, capsys):
    path = write_config(tmp_path, MINIMAL)
    out = tmp_path / "out"
    assert main(["build", "--config", path, "--out", str(out)]) == EXIT_OK
    report = json.loads((out / "build_report.json").read_text())
    assert report["n"] == 4 and report["dimension"] == 2
    gen = (out / "generator.csv").read_text().strip().splitlines()
    assert len(gen) == 2 and all(len(r.split(",")) == 4 for r in gen)


def test_build_empty_defining_set_warns(tmp_path):
    payload = dict(MINIMAL, form_g={"kind": "gram", "rows": [[1]]})
    path = write_config(tmp_path, payload)
    out = tmp_path / "out"
    assert main(["build", "--config", path, "--out", str(out)]) == EXIT_OK
    report = json.loads((out / "build_report.json").read_text())
    assert report["n"] == 0
    assert report["warnings"]


def test_wdist_reports_and_flags(tmp_path, capsys):
    path = write_config(tmp_path, ODD_CASE)
    out = tmp_path / "out"
    rc = main(["wdist", "--config", path, "--out", str(out), "--threads", "2"])
    assert rc == EXIT_OK
    report = json.loads((out / "wdist_report.json").read_text())
    assert report["bruteforce"] == {"0": 1, "4": 12, "6": 8, "8": 6}
    assert report["match"] is True
    assert report["minimality"]["holds"] is False
    assert "flag" in report["minimality"]  # R = 3 failure must be flagged


def test_wdist_csv_format(tmp_path):
    path = write_config(tmp_path, MINIMAL)
    out = tmp_path / "out"
    assert main(["wdist", "--config", path, "--out", str(out),
                 "--format", "csv"]) == EXIT_OK
    rows = (out / "wdist.csv").read_text().strip().splitlines()
    assert rows == ["0,1", "2,4", "4,4"]


def test_ghw_table_and_exit(tmp_path, capsys):
    path = write_config(tmp_path, ODD_CASE)
    out = tmp_path / "out"
    assert main(["ghw", "--config", path, "--out", str(out)]) == EXIT_OK
    report = json.loads((out / "ghw_report.json").read_text())
    assert [row["exact"] for row in report["rows"]] == [4, 6, 8]
    assert report["verdict"] is True
    assert "theorem: odd" in capsys.readouterr().out


def test_ghw_r_range_single_row(tmp_path):
    path = write_config(tmp_path, ODD_CASE)
    out = tmp_path / "out"
    assert main(["ghw", "--config", path, "--out", str(out),
                 "--r-range", "2:2"]) == EXIT_OK
    report = json.loads((out / "ghw_report.json").read_text())
    assert len(report["rows"]) == 1 and report["rows"][0]["exact"] == 6


def test_ghw_dimension_deficient_needs_force(tmp_path):
    payload = dict(MINIMAL, form_g={"kind": "gram", "rows": [[1]]})  # n = 0
    path = write_config(tmp_path, payload)
    out = tmp_path / "out"
    assert main(["ghw", "--config", path, "--out", str(out)]) == EXIT_CHECK_FAILED
    assert main(["ghw", "--config", path, "--out", str(out),
                 "--force"]) == EXIT_OK
    report = json.loads((out / "ghw_report.json").read_text())
    assert report["rows"] == [] and "warning" in report


def test_export(tmp_path):
    path = write_config(tmp_path, MINIMAL)
    out = tmp_path / "out"
    assert main(["export", "--config", path, "--out", str(out)]) == EXIT_OK
    assert (out / "generator.csv").exists()


# -- verify suites --------------------------------------------------------------------

def test_verify_all_passes(tmp_path, capsys):
    path = write_config(tmp_path, ODD_CASE)
    out = tmp_path / "out"
    rc = main(["verify", "--config", path, "--suite", "all",
               "--out", str(out)])
    assert rc == EXIT_OK
    stdout = capsys.readouterr().out
    assert "FAIL" not in stdout
    report = json.loads((out / "verify_all.json").read_text())
    suites = {s["suite"] for s in report["suites"]}
    assert suites == {"lemma21", "lemma22", "lemma26", "lemma27",
                      "lemma32", "lemma33", "tables", "theorems"}
    assert all(s["passed"] for s in report["suites"])


def test_verify_single_suite(tmp_path):
    path = write_config(tmp_path, MINIMAL)
    out = tmp_path / "out"
    assert main(["verify", "--config", path, "--suite", "lemma27",
                 "--out", str(out)]) == EXIT_OK
    report = json.loads((out / "verify_lemma27.json").read_text())
    assert [s["suite"] for s in report["suites"]] == ["lemma27"]


def test_verify_reports_byte_identical(tmp_path):
    path = write_config(tmp_path, ODD_CASE)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    main(["verify", "--config", path, "--suite", "all", "--out", str(out1)])
    main(["verify", "--config", path, "--suite", "all", "--out", str(out2),
          "--threads", "3"])
    assert (out1 / "verify_all.json").read_bytes() == \
        (out2 / "verify_all.json").read_bytes()


def test_tables_suite_corrupted_sign_fails(tmp_path):
    """Negative path: a wrong sign must surface as a named failing check."""
    cfg = load_config(write_config(tmp_path, ODD_CASE))
    good = suite_tables(cfg)
    assert good.passed
    bad = suite_tables(cfg, _corrupt_sign=True)
    # odd R is sign-symmetric, so corrupt an even-R configuration instead
    cfg2 = load_config(write_config(tmp_path, MINIMAL, "m.json"))
    bad2 = suite_tables(cfg2, _corrupt_sign=True)
    assert not bad2.passed
    failing = [c for c in bad2.checks if c.status == "fail"]
    assert [c.name for c in failing] == ["weight-distribution"]


def test_run_suites_skips_over_limit(tmp_path):
    payload = dict(ODD_CASE, limits={"max_subspaces": 2})
    cfg = load_config(write_config(tmp_path, payload))
    results = run_suites(cfg, "lemma33")
    checks = results[0].checks
    assert [c.status for c in checks] == ["skipped"]
    assert "reason" in checks[0].detail  # never silent


def test_verify_exit_code_on_failure(tmp_path, capsys, monkeypatch):
    """Wire the corrupt-sign hook through the command path to check exit 1."""
    import quadcodes.cli as cli
    path = write_config(tmp_path, MINIMAL)
    original = cli.suite_tables
    monkeypatch.setitem(cli.SUITE_RUNNERS, "tables",
                        lambda cfg, threads=1: original(cfg, threads=threads,
                                                        _corrupt_sign=True))
    rc = main(["verify", "--config", path, "--suite", "tables",
               "--out", str(tmp_path / "out")])
    assert rc == EXIT_CHECK_FAILED
    assert "FAIL" in capsys.readouterr().out
