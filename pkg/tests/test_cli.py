"""Tests for the command-line interface."""

import json
import os

import pytest
from click.testing import CliRunner

from nilricci.cli import main

from tests.conftest import GOLDEN


def golden(name: str) -> str:
    return os.path.join(GOLDEN, name)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def invoke(runner: CliRunner, *args: str, code: int = 0) -> dict:
    result = runner.invoke(main, list(args))
    assert result.exit_code == code, result.output
    return json.loads(result.stdout)


def as_floats(rows: list[list[str]]) -> list[list[float]]:
    return [[float(x) for x in row] for row in rows]


def test_algebras_lists_the_catalog(runner):
    doc = invoke(runner, "algebras")
    rows = {row["name"]: row for row in doc["algebras"]}
    assert len(rows) == 9
    assert rows["A5,4"]["brackets"] == "[e1,e4]=e5, [e2,e3]=e5"
    assert rows["5A1"]["brackets"] == "abelian"
    assert rows["A5,3"]["lower_central_series"] == [5, 3, 2, 0]


@pytest.mark.parametrize(
    "expected, args",
    [
        ("algebras", ["algebras"]),
        ("derive_5A1", ["derive", "5A1"]),
        ("reduce_A51", ["reduce", "A5,1", "--gram", "gram_identity.json"]),
        ("frame_A51", ["frame", "A5,1", "--gram", "gram_identity.json"]),
        ("ricci_A31", ["ricci", "A3,1+2A1", "--coeffs", "alpha=2"]),
        ("solve_zero", ["solve", "5A1", "--tensor", "zero.json"]),
        ("verify_A31", ["verify", "A3,1+2A1", "--tensor", "a31_alpha2.json", "--coeffs", "alpha=2"]),
        ("errata", ["errata"]),
    ],
)
def test_output_matches_golden_file(runner, monkeypatch, expected, args):
    monkeypatch.chdir(GOLDEN)
    with open(os.path.join(GOLDEN, "expected", f"{expected}.json"), encoding="utf-8") as f:
        text = f.read()
    for _ in range(2):
        result = runner.invoke(main, args)
        assert result.exit_code == 0, result.output
        assert result.stdout == text


def test_output_is_deterministic(runner):
    args = ["solve", "A3,1+2A1", "--tensor", golden("a31.json")]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout


def test_derive_reports_dimension(runner):
    doc = invoke(runner, "derive", "A5,5")
    assert doc["outputs"]["dimension"] == 10
    assert doc["algebra"] == {"id": "A55", "name": "A5,5"}
    assert "der-a55-a21" in doc["errata"]


def test_solve_zero_tensor_on_abelian(runner):
    doc = invoke(runner, "solve", "5A1", "--tensor", golden("zero.json"))
    assert doc["outputs"]["solvable"] is True
    assert float(doc["outputs"]["solution"]["residual"]) == 0.0


def test_solve_by_letters(runner):
    doc = invoke(runner, "solve", "--tensor", golden("a31.json"))
    outputs = doc["outputs"]
    assert outputs["conditions"]["satisfied"] is True
    assert float(outputs["solution"]["coefficients"]["alpha"]) == pytest.approx(2**0.5)
    assert outputs["solution"]["t"] == "1.00000000000e+00"


def test_unsolvable_tensor_exits_2(runner):
    doc = invoke(runner, "solve", "A5,4", "--tensor", golden("a54_unsolvable.json"), code=2)
    outputs = doc["outputs"]
    assert outputs["solvable"] is False
    assert outputs["solution"] is None
    failed = [item["name"] for item in outputs["conditions"]["items"] if not item["satisfied"]]
    assert "(3) d<0" in failed


def test_ricci_from_coefficients(runner):
    doc = invoke(runner, "ricci", "A31+2A1", "--coeffs", "alpha=2")
    outputs = doc["outputs"]
    assert as_floats(outputs["ricci"]) == [
        [-2.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, -2.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 2.0],
    ]
    assert float(outputs["discrepancy"]) < 1e-12
    assert float(outputs["scalar_curvature"]) == -2.0


def test_ricci_from_gram(runner):
    doc = invoke(runner, "ricci", "A5,4", "--gram", golden("gram_identity.json"))
    outputs = doc["outputs"]
    assert float(outputs["discrepancy"]) < 1e-12
    assert {"eta", "frame_coefficients", "reference_tensor"} <= set(outputs)


def test_ricci_needs_exactly_one_source(runner):
    result = runner.invoke(main, ["ricci", "A5,4"])
    assert result.exit_code == 1
    assert "exactly one" in result.stderr


def test_frame_is_orthonormal(runner):
    doc = invoke(runner, "frame", "A5,2", "--gram", golden("gram_identity.json"))
    assert float(doc["outputs"]["orthonormality_defect"]) < 1e-10


def test_reduce_reports_small_defects(runner):
    doc = invoke(runner, "reduce", "A5,1", "--gram", golden("gram_identity.json"))
    outputs = doc["outputs"]
    assert float(outputs["automorphism_defect"]) < 1e-9
    assert float(outputs["orthogonality_defect"]) < 1e-9


def test_verify(runner):
    tensor = golden("a31.json")
    doc = invoke(runner, "verify", "A3,1+2A1", "--tensor", tensor, "--coeffs", "alpha=1.41421356237")
    assert doc["outputs"]["verified"] is True
    doc = invoke(runner, "verify", "A3,1+2A1", "--tensor", tensor, "--coeffs", "alpha=1", code=2)
    assert doc["outputs"]["verified"] is False


def test_batch_reports_in_filename_order(runner):
    doc = invoke(runner, "solve", "--batch", golden("batch"), code=2)
    assert [r["file"] for r in doc["results"]] == ["01_a31.json", "02_a54.json", "03_zero.json"]
    assert [r["solvable"] for r in doc["results"]] == [True, False, True]
    assert doc["results"][1]["algebra"] == "A5,4"


def test_solvable_batch_exits_0(runner):
    doc = invoke(runner, "solve", "--batch", golden("solvable_batch"))
    assert all(r["solvable"] for r in doc["results"])


@pytest.mark.parametrize(
    "args, message",
    [
        (["derive", "A6,1"], "Unknown algebra"),
        (["solve", "--tensor", "missing.json"], "not found"),
        (["solve", "--tensor", golden("tensor_without_entries.json")], "exactly one of 'matrix' and 'names'"),
        (["solve", "--tensor", golden("asymmetric.json")], "not symmetric"),
        (["solve", "A5,2", "--tensor", golden("a31.json")], "not A5,2"),
        (["ricci", "A5,4", "--coeffs", "beta=-1"], "sign domain"),
        (["ricci", "A5,4", "--coeffs", "omega=1"], "Unknown entry"),
        (["ricci", "A5,4", "--coeffs", "beta"], "name=value"),
        (["reduce", "A5,4", "--gram", golden("zero.json")], "positive-definite"),
    ],
)
def test_input_errors_exit_1(runner, args, message):
    result = runner.invoke(main, args)
    assert result.exit_code == 1
    assert result.stderr.startswith("Error: ")
    assert message in result.stderr


def test_missing_config_file_exits_1(runner, tmp_path):
    result = runner.invoke(main, ["--config", str(tmp_path / "absent.toml"), "algebras"])
    assert result.exit_code == 1
    assert "Config file not found" in result.stderr


def test_config_tolerance_is_used(runner, tmp_path):
    config = tmp_path / "nilricci.toml"
    config.write_text("[tolerances]\nresidual = 0.75\n")
    tensor = golden("a31.json")
    doc = invoke(runner, "--config", str(config), "verify", "A3,1+2A1", "--tensor", tensor, "--coeffs", "alpha=1")
    assert doc["outputs"]["verified"] is True


def test_config_symmetry_tolerance_is_used(runner, tmp_path):
    gram = golden("gram_near_symmetric.json")
    result = runner.invoke(main, ["frame", "A5,4", "--gram", gram])
    assert result.exit_code == 1
    assert "not symmetric at (1,2)" in result.stderr
    config = tmp_path / "nilricci.toml"
    config.write_text("[tolerances]\nsymmetry = 1e-3\n")
    doc = invoke(runner, "--config", str(config), "frame", "A5,4", "--gram", gram)
    assert float(doc["outputs"]["orthonormality_defect"]) < 1e-10


def test_config_pivot_tolerance_reaches_derive(runner, tmp_path):
    config = tmp_path / "nilricci.toml"
    config.write_text("[tolerances]\nzero = 1.0\n")
    result = runner.invoke(main, ["--config", str(config), "derive", "A5,4"])
    assert result.exit_code == 1
    assert "not a derivation" in result.stderr


def test_errata_command_lists_every_entry(runner):
    doc = invoke(runner, "errata")
    keys = [row["key"] for row in doc["errata"]]
    assert "cond-a56-rederived" in keys
    assert len(keys) == len(set(keys))
