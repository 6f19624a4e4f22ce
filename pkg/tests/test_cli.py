import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest
from click.testing import CliRunner

from ringspace import cli
from ringspace.errors import ConvergenceError

SCHEMA = json.loads((Path(__file__).parent.parent / "results.schema.json").read_text())


def run_cli(args):
    return CliRunner().invoke(cli.main, args, catch_exceptions=False)


def run_json(args):
    result = run_cli(args)
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    jsonschema.validate(doc, SCHEMA)
    return doc


# ---------------------------------------------------------------- parsing

def test_parse_complex_forms():
    assert cli.parse_complex("0.7") == 0.7
    assert cli.parse_complex("0.5+0.3i") == 0.5 + 0.3j
    assert cli.parse_complex("-0.6i") == -0.6j
    polar = cli.parse_complex("2∠1.5707963267948966")
    assert polar == pytest.approx(2j)
    ascii_polar = cli.parse_complex("1@3.141592653589793")
    assert ascii_polar == pytest.approx(-1.0)


def test_parse_complex_rejects_garbage():
    import click
    with pytest.raises(click.UsageError):
        cli.parse_complex("fish")


def test_parse_atoms():
    atoms = cli.parse_atoms("1:-1,0.5i:-0.25")
    assert atoms == ((1 + 0j, -1.0), (0.5j, -0.25))
    import click
    with pytest.raises(click.UsageError):
        cli.parse_atoms("nonsense")


# ----------------------------------------------------------------- commands

def test_kernel_zeros_document(dom):
    doc = run_json(["kernel-zeros", "--r", "0.5", "--base", "0.7",
                    "--space", "bergman"])
    assert doc["results"]["count"] == 1
    loc = doc["results"]["locations"][0]
    assert loc["re"] == pytest.approx(-0.5050761251586438, abs=1e-7)


def test_qc_divisor_document():
    doc = run_json(["qc-divisor", "--r", "0.5", "--zeros", "0.7,0.6i"])
    res = doc["results"]
    assert res["C"] == 2.0
    assert res["boundary_modulus_min"] >= 1 - 1e-7
    assert res["boundary_modulus_max"] <= 2 + 1e-7
    assert res["division_ratio_max"] <= 2 + 1e-6


def test_green_document():
    doc = run_json(["green", "--r", "0.5", "--pole", "0.7"])
    assert doc["results"]["boundary_residual_max"] <= 1e-10
    assert doc["results"]["measure_mass"] == pytest.approx(1.0, abs=1e-10)
    assert doc["results"]["interior_min"] > 0


def test_biharmonic_disk_document(tmp_path):
    grid = tmp_path / "grid.csv"
    doc = run_json(["biharmonic", "--r", "0.5", "--disk", "--pole", "0.3",
                    "--n-rho", "32", "--n-theta", "32",
                    "--grid-out", str(grid)])
    assert doc["results"]["min_value"] >= -1e-6 * doc["results"]["max_value"]
    lines = grid.read_text().splitlines()
    assert lines[0] == "rho,theta,re,im"
    assert len(lines) == 1 + 32 * 32
    assert doc["grids"][0]["path"] == str(grid)


def test_usage_error_exit_code():
    result = run_cli(["blaschke", "--r", "0.5"])
    assert result.exit_code == 2


def test_rejected_geometry_exit_code():
    result = run_cli(["green", "--r", "1.5", "--pole", "0.7"])
    assert result.exit_code == 3


def test_convergence_failure_exit_code(monkeypatch, tmp_path):
    def broken(config):
        raise ConvergenceError("did not settle")
    monkeypatch.setitem(cli._HANDLERS, "hmeasure", broken)
    out = tmp_path / "doc.json"
    result = run_cli(["hmeasure", "--r", "0.5", "--base", "0.7", "--j", "1",
                      "--out", str(out)])
    assert result.exit_code == 4
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["status"] == "unverified"


def test_config_file_merge_and_flag_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"r": 0.5, "base": "0.7", "j": 2, "m": 128}))
    doc = run_json(["hmeasure", "--config", str(cfg)])
    assert doc["results"]["component"] == 2
    assert doc["parameters"]["m"] == 128
    # explicit flag wins over the file
    doc2 = run_json(["hmeasure", "--config", str(cfg), "--base", "0.8"])
    assert doc2["parameters"]["base"]["re"] == pytest.approx(0.8)


def test_missing_radius_is_usage_error():
    result = run_cli(["hmeasure", "--base", "0.7"])
    assert result.exit_code == 2


def test_csv_format(tmp_path):
    out = tmp_path / "res.csv"
    result = run_cli(["hmeasure", "--r", "0.5", "--base", "0.7", "--j", "1",
                      "--format", "csv", "--out", str(out)])
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "key,value"
    assert any(line.startswith("c0,") for line in lines)


def test_schottky_fit_document():
    doc = run_json(["schottky-fit", "--r", "0.5", "--base", "0.7",
                    "--zeros", "0.6i", "--N", "96"])
    res = doc["results"]
    assert res["fit_residual"] <= 1e-6
    assert res["reproducing_residual"] <= 1e-7
    assert not res["inner_by_constant_modulus"]
    assert max(res["modulus_deviation_outer"], res["modulus_deviation_inner"]) > 1e-3


def test_repeat_runs_identical():
    args = ["qc-divisor", "--r", "0.5", "--zeros", "0.7", "--seed", "0"]
    d1, d2 = run_json(args), run_json(args)
    assert json.dumps(d1["results"], sort_keys=True) == json.dumps(d2["results"], sort_keys=True)


def test_qc_estimate_ladder_and_flags():
    doc = run_json(["qc-estimate", "--r", "0.5", "--base", "0.6",
                    "--zeros", "0.8", "--m", "256"])
    assert [entry["N"] for entry in doc["ladder"]] == [8, 16, 24, 32]
    assert doc["results"]["flags"] == ""
    doc_raw = run_json(["qc-estimate", "--r", "0.5", "--base", "0.6",
                        "--zeros", "0.8", "--m", "256", "--undivided"])
    assert "EXTRANEOUS_ZERO" in doc_raw["results"]["flags"]
    raw_ladder = [entry["estimate"] for entry in doc_raw["ladder"]]
    assert all(b > a for a, b in zip(raw_ladder, raw_ladder[1:]))


def test_remaining_command_surfaces():
    doc = run_json(["singular", "--r", "0.5", "--base", "0.7", "--atoms", "1:-1"])
    assert doc["results"]["ring_zero_count"] == 0
    assert doc["results"]["atom_count"] == 1

    doc = run_json(["inner-verify", "--r", "0.5", "--base", "0.7",
                    "--zeros", "0.7,0.6i"])
    assert doc["results"]["inner_by_constant_modulus"]

    doc = run_json(["blaschke", "--r", "0.5", "--base", "0.7", "--zeros", "0.7,0.6i"])
    assert doc["results"]["ring_zero_count"] == 2
    assert doc["results"]["factors_used"] == 2

    doc = run_json(["kernel", "--r", "0.5", "--base", "0.7", "--space", "smirnov"])
    assert doc["results"]["reproduce_residual"] <= 1e-9
    assert doc["results"]["value_at_base"] > 0

    doc = run_json(["extremal", "--r", "0.5", "--base", "0.7", "--zeros", "0.6i",
                    "--space", "bergman", "--N", "32"])
    assert doc["results"]["max_value_at_zeros"] <= 1e-10
    assert doc["results"]["formulation_equivalence"] <= 1e-9
    assert doc["results"]["kernel_product_deviation"] <= 1e-6

    doc = run_json(["candidate-divisor", "--r", "0.5", "--base", "0.6",
                    "--zeros", "0.8"])
    assert doc["results"]["zero_location"]["re"] == pytest.approx(0.8, abs=1e-7)
    assert not doc["results"]["inner_by_constant_modulus"]

    doc = run_json(["decomposition", "--r", "0.5", "--base", "0.7",
                    "--zeros", "-0.6", "--N", "48"])
    assert doc["results"]["residual"] <= 1e-5
    assert doc["results"]["log_radial_moment"] == pytest.approx(-0.6337007225202719)
