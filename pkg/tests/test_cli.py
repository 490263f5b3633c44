import dataclasses
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from umbral_kernel import cli
from umbral_kernel.harness import GridConfig, IdentitySection, grid_tasks, run_identity
from umbral_kernel.identities import get_identity, identity_eval
from umbral_kernel.mixed import MixedParams, cp_oracle
from umbral_kernel.sequences import peters_polys

F = Fraction
SMALL = ["--k", "1,2", "--lambda", "1/2,1", "--mu", "0,2", "--s", "1", "--y", "1/2", "--n-max", "4"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_examples(capsys):
    assert run(capsys, "table", "--family", "cp", "--k", "1", "--lambda", "1", "--mu", "1",
               "--n", "1", "--format", "text")[:2] == (0, "1/2\n0, -1/2\n")
    code, out, _ = run(capsys, "table", "--family", "peters", "--lambda", "1", "--mu", "1", "--n", "1")
    assert out.splitlines()[1] == "-1/4, 1/2"
    code, out, _ = run(capsys, "table", "--family", "falling", "--n", "2")
    assert out.splitlines()[2] == "0, -1, 1"


@pytest.mark.parametrize("argv", [
    ["table", "--family", "nope", "--n", "2"],
    ["table", "--family", "cp", "--k", "1", "--n", "2"],
    ["table", "--family", "bernoulli", "--n", "2"],
    ["table", "--family", "peters", "--lambda", "0.5", "--mu", "1", "--n", "2"],
    ["table", "--family", "frobenius-euler", "--s", "1", "--lambda", "1", "--n", "2"],
    ["table", "--family", "falling"],
    ["verify", "--identities", "T7,XX"],
    ["verify"],
    ["verify", "--identities", "T8", "--n-max", "0"],
    ["verify", "--identities", "T7", "--grid", "/nonexistent.json"],
    ["bogus"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "usage error" in err


def test_every_family_renders(capsys):
    params = {"k": ["--k", "2"], "lambda": ["--lambda", "3/2"], "mu": ["--mu", "1"], "s": ["--s", "2"]}
    for family, (required, _) in cli.FAMILIES.items():
        argv = ["table", "--family", family, "--n", "3", "--format", "csv"]
        for r in required:
            argv += params[r]
        code, out, _ = run(capsys, *argv)
        assert code == 0, family
        rows = out.splitlines()
        assert rows[0] == "n,x^0,x^1,x^2,x^3"
        assert len(rows) == 5


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "table", "--family", "cp", "--k=-2", "--lambda", "1/2", "--mu", "3",
                       "--n", "6", "--format", "json")
    assert code == 0
    assert cli.parse_table_json(out) == cp_oracle(MixedParams(-2, F(1, 2), 3), 6)
    rows = json.loads(out)
    assert rows[2] == {"family": "cp", "params": {"k": -2, "lambda": "1/2", "mu": 3}, "n": 2,
                       "coeffs": rows[2]["coeffs"]}
    code, out, _ = run(capsys, "table", "--family", "peters", "--lambda", "-1", "--mu", "2",
                       "--n", "5", "--format", "json")
    assert cli.parse_table_json(out) == list(peters_polys(F(-1), 2, 5))


def test_verify_examples(capsys):
    code, out, err = run(capsys, "verify", "--identities", "T7", "--n-max", "8", "--summary-only")
    assert code == 0
    doc = json.loads(out)
    assert doc["identities"][0]["state"] == "verified"
    assert doc["identities"][0]["printed"]["failed"] == 0
    code, out, _ = run(capsys, "verify", "--identities", "T1", "--n-max", "0")
    assert code == 0
    assert json.loads(out)["identities"][0]["state"] == "verified"


def test_verify_reports_errata_state(capsys):
    code, out, _ = run(capsys, "verify", "--identities", "R43,T10", *SMALL)
    assert code == 0
    doc = json.loads(out)
    assert [s["state"] for s in doc["identities"]] == ["errata-resolved", "errata-resolved"]
    assert doc["identities"][0]["correction"]["failed"] == 0


def test_verify_failure_exits_1(capsys, monkeypatch):
    ident = dataclasses.replace(get_identity("R43"), suite="A")
    bad = [identity_eval("R43", MixedParams(1, F(1, 2), 0), 3)]
    assert not bad[0].verified
    monkeypatch.setattr(cli, "run_verify", lambda ids, grid, jobs=1: [IdentitySection(ident, "failed", bad)])
    code, out, _ = run(capsys, "verify", "--identities", "R43", "--n-max", "3")
    assert code == 1
    assert json.loads(out)["exit_code"] == 1


def test_verify_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "--identities", "T3,ADD56,T11", *SMALL, "--output", str(a))[0] == 0
    assert run(capsys, "verify", "--identities", "T3,ADD56,T11", *SMALL, "--output", str(b),
               "--jobs", "2")[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_grid_file_and_overrides(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"k": [0], "lambda": ["2", "1/3"], "mu": [1], "n_max": 3}))
    code, out, _ = run(capsys, "verify", "--identities", "T6", "--grid", str(grid), "--mu", "0,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["grid"]["lambda"] == ["2", "1/3"]
    assert doc["grid"]["mu"] == [0, 1]
    assert doc["grid"]["n_max"] == 3
    assert doc["identities"][0]["printed"]["checked"] == 4
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"k": []}))
    assert run(capsys, "verify", "--identities", "T6", "--grid", str(bad))[0] == 2


def test_grid_config_round_trip():
    g = GridConfig(k_values=[1], lambda_values=[F(2, 3)], mu_values=[-1], s_values=[0],
                   y_values=[F(-3)], n_max=5)
    assert GridConfig.from_json(json.loads(json.dumps(g.to_json()))) == g


def test_grid_lambda_rules():
    grid = GridConfig()
    lams = {p.lam for p, _ in grid_tasks(get_identity("T11"), grid)}
    assert F(1) not in lams
    rec = grid_tasks(get_identity("REC60"), grid)
    assert {p.lam for p, _ in rec} == {F(1)}
    assert len(rec) == 30
    add = grid_tasks(get_identity("ADD55"), grid)
    assert len(add) == 150 * 7


def test_parallel_matches_serial():
    grid = GridConfig(k_values=[0, 1], lambda_values=[F(2)], mu_values=[1, 2], n_max=4)
    a = [r.to_json() for r in run_identity("T5", grid)]
    b = [r.to_json() for r in run_identity("T5", grid, jobs=3)]
    assert a == b


def test_errata_document(capsys):
    code, out, _ = run(capsys, "errata", "--identities", "R43,R54,T3", *SMALL)
    assert code == 0
    assert "No errata: every suite A identity verified as written." in out
    assert "### R43" in out and "B_l^(m) -> B_l^(n)" in out
    assert "### R54" in out and "CP^_n(0) -> CP^_m(0)" in out
    assert "witness:" in out
    assert "final state: verified" in out
    code, out, _ = run(capsys, "errata", "--identities", "R43", *SMALL, "--format", "json")
    entry = json.loads(out)["identities"][0]
    assert entry["printed"]["witness"]["lhs"] != entry["printed"]["witness"]["rhs"]


def test_export(tmp_path, capsys):
    out_dir = tmp_path / "tables"
    code, _, _ = run(capsys, "export", "--k", "1", "--lambda", "1,1/2", "--mu", "1", "--n-max", "3",
                     "--output", str(out_dir))
    assert code == 0
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert len(manifest["files"]) == 4
    for entry in manifest["files"]:
        polys = cli.parse_table_json((out_dir / entry["file"]).read_text())
        assert len(polys) == 4
    first = manifest["files"][0]
    assert first["params"] == {"k": 1, "lambda": "1", "mu": 1}
    assert cli.parse_table_json((out_dir / first["file"]).read_text()) == cp_oracle(MixedParams(1, 1, 1), 3)


def test_console_module_runs():
    proc = subprocess.run([sys.executable, "-m", "umbral_kernel", "table", "--family", "rising", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[3] == "0, 2, 3, 1"
