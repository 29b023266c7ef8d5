"""Tests for JSON I/O and the command-line harness."""

import csv
import hashlib
import io
import json

import numpy as np
import pytest

from symnorm import GridFunction, make_grid
from symnorm.cli import CLIError, Report, RunConfig, emit_report, main, parse_config, run
from symnorm.errors import DomainError
from symnorm.hardy import blaschke
from symnorm.io import (
    canonical_dumps,
    gridfunction_from_dict,
    load_gridfunction,
    save_gridfunction,
    save_spec,
)
from symnorm.norms import KyFan, Lp
from symnorm.sampling import random_function


@pytest.fixture
def files(tmp_path):
    g = make_grid(256)
    rng = np.random.default_rng(0)
    f = random_function(g, rng)
    paths = {
        "f": tmp_path / "f.json",
        "b": tmp_path / "blaschke_times_2pz.json",
        "lp2": tmp_path / "lp2.json",
        "kyfan": tmp_path / "kyfan.json",
    }
    save_gridfunction(f, paths["f"])
    save_gridfunction(GridFunction(g, blaschke(g, 0.5).samples * (2 + g.points)), paths["b"])
    save_spec(Lp(2), paths["lp2"])
    save_spec(KyFan(0.5), paths["kyfan"])
    return {k: str(v) for k, v in paths.items()} | {"dir": tmp_path, "f_obj": f}


# -- grid function files ---------------------------------------------------------------

def test_gridfunction_round_trip_is_exact(tmp_path):
    f = random_function(make_grid(64), np.random.default_rng(1))
    save_gridfunction(f, tmp_path / "a.json")
    back = load_gridfunction(tmp_path / "a.json")
    assert np.array_equal(back.samples, f.samples)
    save_gridfunction(back, tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_gridfunction_reader_rejects_length_mismatch():
    with pytest.raises(DomainError):
        gridfunction_from_dict({"n": 4, "samples": [[1, 0]] * 3})
    with pytest.raises(DomainError):
        gridfunction_from_dict({"n": 6, "samples": [[1, 0]] * 6})
    with pytest.raises(DomainError):
        gridfunction_from_dict({"samples": []})
    with pytest.raises(DomainError):
        gridfunction_from_dict({"n": 2, "samples": [[1, 0], "x"]})


def test_writer_uses_seventeen_digits():
    text = canonical_dumps({"x": 0.1, "y": [1 / 3]})
    assert "0.10000000000000001" in text
    assert "0.33333333333333331" in text
    assert json.loads(text)["y"][0] == 1 / 3


def test_non_finite_floats_are_strings():
    assert json.loads(canonical_dumps({"a": float("inf"), "b": float("-inf")})) == {"a": "inf", "b": "-inf"}


# -- parse_config --------------------------------------------------------------------------

def test_parse_norm_example(files):
    cfg = parse_config(["norm", "--spec", files["kyfan"], "--in", files["f"], "--n", "256"])
    assert cfg == RunConfig(command="norm", grid_n=256, spec_path=files["kyfan"], input_paths=[files["f"]])


@pytest.mark.parametrize("argv,code", [
    (["verify", "--n", "100"], 4),
    (["verify", "--n", "0"], 4),
    (["norm", "--spec", "/no/such/spec.json", "--in", "/no/such/f.json"], 3),
    (["verify", "--bogus"], 2),
    (["frobnicate"], 2),
    (["norm", "--in", "x.json"], 2),
    (["verify", "--tol", "nonsense=1"], 2),
    (["verify", "--tol", "dual=abc"], 4),
    (["verify", "--n", "abc"], 2),
])
def test_parse_errors_have_distinct_codes(argv, code):
    with pytest.raises(CLIError) as exc:
        parse_config(argv)
    assert exc.value.code == code


def test_missing_spec_file_is_io_error(files):
    with pytest.raises(CLIError) as exc:
        parse_config(["norm", "--spec", files["f"] + ".missing", "--in", files["f"]])
    assert exc.value.code == 3


def test_bad_json_and_grid_mismatch_are_validation_errors(files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    for argv in (["norm", "--spec", str(bad), "--in", files["f"]],
                 ["norm", "--spec", files["lp2"], "--in", files["f"], "--n", "64"]):
        with pytest.raises(CLIError) as exc:
            parse_config(argv)
        assert exc.value.code == 4


def test_main_returns_exit_codes(capsys):
    assert main(["verify", "--n", "100"]) == 4
    assert main(["nope"]) == 2
    assert "symnorm:" in capsys.readouterr().err


# -- run ------------------------------------------------------------------------------------

def test_dual_of_l2_is_l2(files):
    rep = run(parse_config(["dual", "--spec", files["lp2"], "--in", files["f"]]))
    assert rep.exit_code == 0
    f = files["f_obj"]
    assert rep.results[0]["value"] == pytest.approx(float(np.sqrt(np.mean(np.abs(f.samples) ** 2))), abs=1e-8)
    assert rep.results[0]["witness"]["n"] == 256


def test_factor_fixture_file(files):
    rep = run(parse_config(["factor", "--in", files["b"]]))
    assert rep.exit_code == 0
    res = rep.results[0]["factorization"]
    assert res["unimodularity_residual"] <= 1e-6
    assert res["reconstruction_residual"] <= 1e-6
    assert res["success"] is True
    assert rep.results[0]["input_is_outer"] is False


def test_norm_builtin_spec(files):
    rep = run(parse_config(["norm", "--spec", "builtin:linf", "--in", files["f"]]))
    assert rep.results[0]["alpha"] == float(np.max(np.abs(files["f_obj"].samples)))


def test_unknown_builtin_is_validation_error(files):
    with pytest.raises(CLIError) as exc:
        parse_config(["norm", "--spec", "builtin:nope", "--in", files["f"]])
    assert exc.value.code == 4


def test_module_error_surfaces_in_report(files, tmp_path):
    # the conjugate of z is not analytic, so factorization rejects it
    g = make_grid(256)
    save_gridfunction(GridFunction(g, g.points.conj()), tmp_path / "zbar.json")
    rep = run(parse_config(["factor", "--in", str(tmp_path / "zbar.json")]))
    assert rep.exit_code == 4
    assert "Hardy space" in rep.error


def test_beurling_and_smirnov_fixture_runs():
    rep = run(parse_config(["beurling", "--n", "256"]))
    assert rep.exit_code == 0
    assert all(r["principal_angle"] <= 1e-6 for r in rep.results)
    rep = run(parse_config(["smirnov", "--n", "256"]))
    assert rep.exit_code == 0
    assert len(rep.results) == 10


def test_converge_writes_csv(tmp_path, capsys):
    out, csv_path = tmp_path / "c.json", tmp_path / "c.csv"
    assert main(["converge", "--n", "64", "--out", str(out), "--csv", str(csv_path)]) == 0
    rows = list(csv.DictReader(io.StringIO(csv_path.read_text())))
    assert {r["method"] for r in rows} == {"cesaro", "poisson"}
    ces = [r for r in rows if r["method"] == "cesaro"]
    assert all(float(r["error"]) <= float(r["bound"]) + 1e-10 for r in ces)
    assert len(json.loads(out.read_text())["results"]) == len(rows)


def test_converge_csv_on_stdout(tmp_path, capsys):
    assert main(["converge", "--n", "16", "--out", str(tmp_path / "c.json")]) == 0
    assert capsys.readouterr().out.startswith("input,method,parameter,spec,error,bound\n")


# -- reports -------------------------------------------------------------------------------------

def test_verify_report_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--n", "64", "--seed", "7", "--out", str(a)]) == 0
    assert main(["verify", "--n", "64", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["exit_code"] == 0
    assert rep["generator"] == "numpy.random.PCG64"
    assert "wall_clock_s" not in rep
    names = [p["name"] for p in rep["properties"]]
    assert len(names) == len(set(names)) > 30
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_determinism_across_thread_counts(tmp_path, monkeypatch, capsys):
    outs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("SYMNORM_THREADS", threads)
        p = tmp_path / f"r{threads}.json"
        main(["verify", "--n", "16", "--seed", "3", "--out", str(p)])
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_config_hash_matches_independent_hash(tmp_path, capsys):
    p = tmp_path / "r.json"
    main(["verify", "--n", "16", "--seed", "1", "--tol", "dual=1e-9", "--out", str(p)])
    rep = json.loads(p.read_text())
    text = json.dumps(rep["config"], sort_keys=True, separators=(",", ":"))
    assert hashlib.sha256(text.encode()).hexdigest() == rep["config_hash"]
    assert rep["config"]["tolerances"]["dual"] == 1e-9


def test_timing_only_when_requested(tmp_path, capsys):
    p = tmp_path / "r.json"
    main(["smirnov", "--n", "256", "--timing", "--out", str(p)])
    assert json.loads(p.read_text())["wall_clock_s"] > 0


def test_empty_case_list_report(tmp_path):
    cfg = RunConfig(command="norm")
    rep = Report("norm", cfg.canonical(), cfg.hash())
    p = tmp_path / "empty.json"
    emit_report(rep, str(p), stdout=io.StringIO())
    d = json.loads(p.read_text())
    assert d["results"] == [] and d["properties"] == [] and d["exit_code"] == 0


def test_emit_report_io_error(tmp_path):
    cfg = RunConfig(command="norm")
    with pytest.raises(CLIError) as exc:
        emit_report(Report("norm", cfg.canonical(), cfg.hash()), str(tmp_path / "no" / "dir" / "r.json"))
    assert exc.value.code == 3


def test_report_to_stdout_without_out(capsys, files):
    assert main(["norm", "--spec", files["kyfan"], "--in", files["f"]]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["command"] == "norm" and len(d["results"]) == 1
