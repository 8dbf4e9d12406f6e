"""JSON input files and report documents of the command-line interface."""

import json
import math
from pathlib import Path
from typing import Any, TypeVar

import numpy as np
from pydantic import BaseModel, Field, ValidationError, ValidationInfo, field_validator, model_validator

from nilricci.algebra.catalog import parse_algebra_id
from nilricci.config import Tolerances, get_tolerances
from nilricci.errors import NilRicciError
from nilricci.types import DIM, AlgebraId

FLOAT_FORMAT = "%.11e"

M = TypeVar("M", bound=BaseModel)


def _tolerances(info: ValidationInfo) -> Tolerances:
    context = info.context or {}
    tolerances = context.get("tolerances")
    return tolerances if isinstance(tolerances, Tolerances) else get_tolerances()


def _check_square(matrix: list[list[float]], symmetry_tol: float) -> list[list[float]]:
    if len(matrix) != DIM or any(len(row) != DIM for row in matrix):
        raise ValueError("matrix must be 5x5 (row-major list of 5 rows)")
    if any(not math.isfinite(x) for row in matrix for x in row):
        raise ValueError("matrix entries must be finite")
    for i in range(DIM):
        for j in range(i + 1, DIM):
            if abs(matrix[i][j] - matrix[j][i]) > symmetry_tol:
                raise ValueError(f"matrix is not symmetric at ({i + 1},{j + 1})")
    return matrix


class GramFile(BaseModel):
    """Gram matrix S_ij = <e_i, e_j> of a metric."""

    algebra: str | None = None
    matrix: list[list[float]]

    @field_validator("matrix")
    @classmethod
    def _check_matrix(cls, v: list[list[float]], info: ValidationInfo) -> list[list[float]]:
        return _check_square(v, _tolerances(info).symmetry)


class TensorFile(BaseModel):
    """
    Prescribed tensor, as a full matrix or by the letters of its shape.

    Example:
        {"algebra": "A3,1+2A1", "names": {"a": -1, "b": -1, "c": 1}}
    """

    algebra: str
    matrix: list[list[float]] | None = None
    names: dict[str, float] | None = None
    case: str | None = Field(default=None, description="Shape to read names against (A4,1+A1 only)")

    @field_validator("matrix")
    @classmethod
    def _check_matrix(cls, v: list[list[float]] | None, info: ValidationInfo) -> list[list[float]] | None:
        return None if v is None else _check_square(v, _tolerances(info).symmetry)

    @model_validator(mode="after")
    def _one_source(self) -> "TensorFile":
        if (self.matrix is None) == (self.names is None):
            raise ValueError("exactly one of 'matrix' and 'names' must be given")
        return self

    @property
    def algebra_id(self) -> AlgebraId:
        return parse_algebra_id(self.algebra)


def load_model(model: type[M], path: Path, tolerances: Tolerances | None = None) -> M:
    """
    Read and validate a JSON document.

    Matrices are checked for symmetry at ``tolerances.symmetry``.

    Raises:
        FileNotFoundError: If the file does not exist.
        ValidationError: If the content does not match the model.
    """
    if not path.exists():
        raise FileNotFoundError(f"Input file not found: {path}")
    return model.model_validate_json(path.read_text(), context={"tolerances": tolerances or get_tolerances()})


def describe_validation_error(path: Path, error: ValidationError) -> str:
    problems = "; ".join(f"{'.'.join(str(p) for p in e['loc']) or 'document'}: {e['msg']}" for e in error.errors())
    return f"Invalid input {path}: {problems}"


def parse_assignments(text: str) -> dict[str, float]:
    """
    Parse "alpha=2,beta=-0.5" into a mapping.

    Raises:
        NilRicciError: If an item is not name=number or a name repeats.
    """
    values: dict[str, float] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, sep, raw = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise NilRicciError(f"Expected name=value, got '{item}'")
        if name in values:
            raise NilRicciError(f"Coefficient '{name}' given twice")
        try:
            values[name] = float(raw)
        except ValueError:
            raise NilRicciError(f"Value of '{name}' is not a number: '{raw.strip()}'") from None
    return values


def format_float(x: float) -> str:
    """Fixed exponent form; -0 prints as 0."""
    value = float(x)
    if value == 0.0:
        value = 0.0
    return FLOAT_FORMAT % value


def to_document(value: Any) -> Any:
    """Convert numbers and arrays to their printed form, recursively."""
    if isinstance(value, dict):
        return {str(k): to_document(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_document(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_document(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    return value


def render(document: dict[str, Any]) -> str:
    """Serialize a report with sorted keys; identical input gives identical text."""
    return json.dumps(to_document(document), sort_keys=True, indent=2, ensure_ascii=False)
