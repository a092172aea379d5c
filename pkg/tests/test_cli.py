import json
import math
import subprocess
import sys

import pytest

from casimir_liv import cli
from casimir_liv.bounds import liv_upper_bound, load_preset
from casimir_liv.observables import SI, PlateGeometry, casimir_force, casimir_pressure, energy_per_area_physical


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_process(*argv, cwd=None):
    return subprocess.run([sys.executable, "-m", "casimir_liv", *argv], capture_output=True, cwd=cwd)


def test_parse_force_example():
    cfg = cli.parse_invocation(["force", "--a", "100e-9", "--disk-diameter", "1.25e-2", "--si"])
    assert cfg.subcommand == "force" and cfg.units == "SI" and cfg.output == "pretty"
    assert cfg.params["a"] == 1e-7 and cfg.params["disk_diameter"] == 1.25e-2 and cfg.params["area"] is None


def test_help_exits_cleanly(capsys):
    code, out, _ = run_cli(capsys, "--help")
    assert code == 0 and "usage" in out
    code, out, _ = run_cli(capsys, "force", "--help")
    assert code == 0 and "--disk-diameter" in out


@pytest.mark.parametrize("argv, needle", [
    (["force", "--a", "0"], "a must be > 0"),
    (["force", "--a", "abc"], "not a number"),
    (["force", "--a", "1", "--area", "1", "--disk-diameter", "1"], "not allowed"),
    (["force", "--a", "1"], "--area or --disk-diameter"),
    (["force", "--a", "1", "--area", "1", "--bogus"], "unrecognized"),
    (["frobnicate"], "invalid choice"),
    (["bound", "--natural"], "natural units"),
])
def test_usage_errors(capsys, argv, needle):
    code, _, err = run_cli(capsys, *argv)
    assert code == 2
    assert needle in err
    assert len(err.strip().splitlines()[-1]) < 200


def test_force_json_matches_library(capsys):
    code, out, _ = run_cli(capsys, "force", "--a", "1e-7", "--disk-diameter", "1.25e-2", "--si", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    res = doc["result"]
    g = PlateGeometry(1e-7, disk_diameter=1.25e-2)
    assert res["force"] == casimir_force(g, 0.0, SI)
    assert res["force"] == pytest.approx(-1.5955e-3, rel=1e-4)
    assert res["pressure"] == casimir_pressure(1e-7, 0.0, SI)
    assert res["energy_per_area"] == energy_per_area_physical(1e-7, 0.0, SI)
    assert res["units"]["force"] == "N"
    assert doc["config"]["a"] == 1e-7 and doc["config"]["units"] == "SI"


def test_force_pretty_has_units_and_label(capsys):
    code, out, _ = run_cli(capsys, "force", "--a", "1e-7", "--disk-diameter", "1.25e-2", "--si")
    assert code == 0
    assert "N  (attractive" in out and "Pa" in out


def test_force_csv(capsys):
    code, out, _ = run_cli(capsys, "force", "--a", "2e-6", "--area", "1e-4", "--si", "--format", "csv")
    assert code == 0
    header, row = out.strip().split("\n")
    cols = header.split(",")
    vals = dict(zip(cols, row.split(",")))
    assert float(vals["force"]) == casimir_force(PlateGeometry(2e-6, area_A=1e-4), 0.0, SI)
    assert "micrometre" in vals["warnings"]
    assert vals["units.mode"] == "SI"


def test_energy_natural(capsys):
    code, out, _ = run_cli(capsys, "energy", "--a", "1", "--format", "json")
    res = json.loads(out)["result"]
    assert res["energy_per_area"] == energy_per_area_physical(1.0, 0.0)
    assert res["energy_per_area"] == pytest.approx(-math.pi**2 / 720, rel=1e-15)
    assert res["force"] is None


def test_bound_preset_json(capsys):
    code, out, _ = run_cli(capsys, "bound", "--preset", "paper_inputs", "--variant", "dF_1pN", "--format", "json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["L_max"] == liv_upper_bound(load_preset("paper_inputs", "dF_1pN")).L_max
    assert res["L_max"] == pytest.approx(6.27e-14, rel=0.01)
    assert res["paper_discrepancy"]["reported_L_max"] == 1.6e-5
    assert "1.6e-05" in res["paper_discrepancy"]["note"]


def test_bound_explicit_and_overrides(capsys):
    code, out, _ = run_cli(capsys, "bound", "--a", "1e-8", "--disk-diameter", "1.25e-2",
                           "--delta-F", "1e-12", "--format", "json")
    res = json.loads(out)["result"]
    assert code == 0 and "paper_discrepancy" not in res
    assert res["L_max"] == pytest.approx(6.27e-14, rel=0.01)
    code, out, _ = run_cli(capsys, "bound", "--preset", "paper_inputs", "--a", "2e-8", "--format", "json")
    res = json.loads(out)["result"]
    assert res["L_max"] == pytest.approx(16 * 6.2676e-14, rel=1e-4)
    assert "paper_discrepancy" not in res


def test_kappa_command(tmp_path, capsys):
    p = tmp_path / "kf.toml"
    p.write_text('kf = [{indices = [0, 1, 0, 1], value = 1.0e-17}]\n')
    code, out, _ = run_cli(capsys, "kappa", "--input", str(p), "--e-sq", "1", "--b-sq", "1",
                           "--isotropic", "--format", "json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["kappa"]["kappa_DE"][0][0] == -2e-17
    assert res["L"] == pytest.approx(-2e-17 / 3 / 2, rel=1e-15)
    assert res["validation"]["ok"] and res["max_cross_term"] == 0.0


def test_modes_and_sweeps(capsys):
    code, out, _ = run_cli(capsys, "modes", "--a", str(math.pi), "--omega-max", "2.5", "--format", "json")
    rows = json.loads(out)["result"]
    assert [(r["bc"], r["n"]) for r in rows] == [("Neumann", 0), ("Dirichlet", 1), ("Neumann", 1),
                                                  ("Dirichlet", 2), ("Neumann", 2)]
    code, out, _ = run_cli(capsys, "sweep", "--a", "1", "--deltas", "0.08,0.04,0.02", "--format", "csv")
    assert code == 0 and out.startswith("a,delta,raw_sum,continuum,subtracted,extrapolated,zeta_reference")
    code, out, _ = run_cli(capsys, "sweep", "--kind", "bound", "--a-grid", "1e-8,1e-7", "--format", "json")
    rows = json.loads(out)["result"]
    assert rows[1]["L_max"] / rows[0]["L_max"] == pytest.approx(1e4, rel=1e-12)


def test_validate_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "validate")
    assert code == 0 and "all checks passed" in out


def test_validate_fails_on_tight_tolerance(capsys):
    code, out, _ = run_cli(capsys, "validate", "--rtol", "1e-9", "--points", "2")
    assert code == 1 and "FAILED" in out


def test_config_file_flags_win(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('a = 1e-7\ndisk-diameter = 1.25e-2\nL = 0.5\n')
    code, out, _ = run_cli(capsys, "force", "--config", str(cfg), "--si", "--L", "0", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["L"] == 0.0 and doc["config"]["a"] == 1e-7
    assert doc["result"]["force"] == casimir_force(PlateGeometry(1e-7, disk_diameter=1.25e-2), 0.0, SI)
    bad = tmp_path / "bad.toml"
    bad.write_text('a = 1e-7\ncolour = "blue"\n')
    code, _, err = run_cli(capsys, "force", "--config", str(bad))
    assert code == 2 and "unknown key" in err
    neg = tmp_path / "neg.toml"
    neg.write_text('a = -1.0\n')
    code, _, err = run_cli(capsys, "force", "--config", str(neg), "--area", "1")
    assert code == 2 and "a must be > 0" in err


def test_io_and_domain_exit_codes(tmp_path, capsys):
    code, _, err = run_cli(capsys, "kappa", "--input", str(tmp_path / "missing.toml"))
    assert code == 3
    code, _, _ = run_cli(capsys, "force", "--config", str(tmp_path / "missing.toml"), "--a", "1", "--area", "1")
    assert code == 3
    code, _, err = run_cli(capsys, "bound", "--preset", "no_such_preset")
    assert code == 3
    code, _, err = run_cli(capsys, "sweep", "--a", "1", "--deltas", "0.02,0.01,0.005", "--n-max", "10")
    assert code == 4 and "increase n_max" in err
    bad = tmp_path / "kf.toml"
    bad.write_text('kf = [{indices = [0, 0, 1, 2], value = 1e-17}]\n')
    code, _, err = run_cli(capsys, "kappa", "--input", str(bad))
    assert code == 4 and "forced to zero" in err


def test_byte_identical_across_processes(tmp_path):
    for argv in (["force", "--a", "1e-7", "--disk-diameter", "1.25e-2", "--si", "--format", "json"],
                 ["bound", "--preset", "paper_inputs", "--format", "json"],
                 ["sweep", "--a", "1", "--format", "csv"]):
        a, b = run_process(*argv, cwd=tmp_path), run_process(*argv, cwd=tmp_path)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout and a.stdout
