"""Tests for input files and report rendering."""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from nilricci.config import Tolerances
from nilricci.documents import (
    GramFile,
    TensorFile,
    describe_validation_error,
    format_float,
    load_model,
    parse_assignments,
    render,
)
from nilricci.errors import NilRicciError


def test_parse_assignments():
    assert parse_assignments("alpha=2, beta=-0.5,") == {"alpha": 2.0, "beta": -0.5}
    assert parse_assignments("") == {}


@pytest.mark.parametrize(
    "text, message", [("alpha", "name=value"), ("alpha=1,alpha=2", "twice"), ("alpha=x", "not a number")]
)
def test_parse_assignments_rejects(text, message):
    with pytest.raises(NilRicciError, match=message):
        parse_assignments(text)


def test_format_float_has_no_negative_zero():
    assert format_float(-0.0) == "0.00000000000e+00"
    assert format_float(np.float64(1.5)) == "1.50000000000e+00"


def test_format_float_keeps_twelve_significant_digits():
    assert format_float(1 / 3) == "3.33333333333e-01"
    assert format_float(-2.0**0.5) == "-1.41421356237e+00"


def test_render_sorts_keys_and_formats_numbers():
    text = render({"b": np.eye(2), "a": {"flag": np.bool_(True), "n": np.int64(3)}})
    doc = json.loads(text)
    assert list(doc) == ["a", "b"]
    assert doc["a"] == {"flag": True, "n": 3}
    assert doc["b"][0] == ["1.00000000000e+00", "0.00000000000e+00"]
    assert text == render({"a": {"n": 3, "flag": True}, "b": np.eye(2)})


def test_tensor_file_needs_exactly_one_source():
    with pytest.raises(ValidationError):
        TensorFile(algebra="A5,4")
    with pytest.raises(ValidationError):
        TensorFile(algebra="A5,4", matrix=np.zeros((5, 5)).tolist(), names={"a": 1.0})
    assert TensorFile(algebra="A5,4", names={"a": -1.0}).algebra_id == "A54"


@pytest.mark.parametrize(
    "matrix, message",
    [
        ([[1.0] * 5] * 4, "5x5"),
        ([[0.0, 1.0, 0, 0, 0]] + [[0.0] * 5] * 4, "not symmetric"),
    ],
)
def test_gram_file_validation(matrix, message, tmp_path):
    path = tmp_path / "gram.json"
    path.write_text(json.dumps({"matrix": matrix}))
    with pytest.raises(ValidationError) as info:
        load_model(GramFile, path)
    assert message in describe_validation_error(path, info.value)


def test_symmetry_threshold_comes_from_tolerances(tmp_path):
    path = tmp_path / "gram.json"
    matrix = np.eye(5)
    matrix[0, 1] = 1e-6
    path.write_text(json.dumps({"matrix": matrix.tolist()}))
    with pytest.raises(ValidationError):
        load_model(GramFile, path)
    loose = load_model(GramFile, path, Tolerances(symmetry=1e-3))
    assert loose.matrix[0][1] == 1e-6


def test_load_model_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_model(GramFile, tmp_path / "absent.json")
