"""CLI interface for the nilpotent Ricci toolkit."""

import functools
import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any, NoReturn, cast

import click
import numpy as np
from pydantic import ValidationError

from nilricci.algebra.catalog import catalog, get_entry, parse_algebra_id
from nilricci.algebra.derivations import derivation_space, parametric_free_parameters, parametric_form
from nilricci.algebra.structure import lower_central_series
from nilricci.config import Config, Tolerances, load_config
from nilricci.curvature.closed_form import closed_form_ricci
from nilricci.curvature.ricci import ricci_nilpotent, ricci_tensor_reference
from nilricci.documents import (
    GramFile,
    TensorFile,
    describe_validation_error,
    load_model,
    parse_assignments,
    render,
)
from nilricci.errata import ERRATA, errata_for
from nilricci.metrics.decompose import InnerProduct, gram_to_gl
from nilricci.metrics.frames import FrameCoefficients, frame_structure_constants
from nilricci.metrics.moduli import automorphism_defect, milnor_frame, reduce
from nilricci.prescribed.patterns import PrescribedTensor
from nilricci.prescribed.solver import SolveResult, Solution, solve_batch, solve_report, verify_solution
from nilricci.types import AlgebraId, FrameCase

logger = logging.getLogger(__name__)

EXIT_UNSOLVABLE = 2
CASES = ["main", "first", "second"]


def _fail(message: str) -> NoReturn:
    click.echo(f"Error: {message}", err=True)
    raise SystemExit(1)


def reports_errors(command: Callable[..., None]) -> Callable[..., None]:
    """Turn library and input errors into 'Error: ...' on stderr with exit status 1."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            command(*args, **kwargs)
        except (ValueError, FileNotFoundError) as e:
            _fail(str(e))

    return wrapper


def _config(ctx: click.Context) -> Config:
    return cast(Config, ctx.obj)


def _header(command: str, algebra_id: AlgebraId | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"command": command}
    if algebra_id is not None:
        entry = get_entry(algebra_id)
        doc["algebra"] = {"id": entry.id, "name": entry.name}
        doc["errata"] = [e.key for e in errata_for(entry.name + " ")]
    return doc


def _gram(path: Path, tolerances: Tolerances) -> InnerProduct:
    try:
        gram_file = load_model(GramFile, path, tolerances)
    except ValidationError as e:
        _fail(describe_validation_error(path, e))
    return InnerProduct(np.array(gram_file.matrix), tolerances)


def _tensor(
    path: Path, algebra_id: AlgebraId | None, tolerances: Tolerances
) -> tuple[AlgebraId, PrescribedTensor]:
    try:
        tensor_file = load_model(TensorFile, path, tolerances)
    except ValidationError as e:
        _fail(describe_validation_error(path, e))
    file_id = tensor_file.algebra_id
    if algebra_id is not None and algebra_id != file_id:
        _fail(f"{path}: file is for {get_entry(file_id).name}, not {get_entry(algebra_id).name}")
    if tensor_file.names is not None:
        if tensor_file.case is not None and tensor_file.case not in CASES:
            _fail(f"{path}: unknown case '{tensor_file.case}'")
        case = cast(FrameCase | None, tensor_file.case)
        return file_id, PrescribedTensor.from_letters(file_id, tensor_file.names, case, tolerances)
    return file_id, PrescribedTensor(file_id, np.array(tensor_file.matrix), tolerances)


def _coefficients(algebra_id: AlgebraId, text: str, case: str | None) -> FrameCoefficients:
    coeffs = FrameCoefficients.from_mapping(algebra_id, parse_assignments(text), cast(FrameCase | None, case))
    coeffs.check_signs()
    return coeffs


def _solution_document(solution: Solution) -> dict[str, Any]:
    return {
        "case": solution.case,
        "coefficients": dict(solution.coeffs.values),
        "residual": solution.residual,
        "sufficiency_only": solution.sufficiency_only,
        "t": solution.t,
    }


def _result_document(result: SolveResult) -> dict[str, Any]:
    report = result.report
    return {
        "conditions": {
            "derived": report.derived_quantities,
            "items": [
                {"name": item.name, "residual": item.residual, "satisfied": item.satisfied} for item in report.items
            ],
            "satisfied": report.satisfied,
        },
        "degenerate": result.degenerate,
        "solution": _solution_document(result.solution) if result.solution else None,
        "solvable": result.solvable,
        "tensor": result.tensor.m,
    }


@click.group()
@click.version_option(package_name="nilpotent-ricci")
@click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path),
    help="Path to a TOML config file with a [tolerances] table.",
)
@click.option("-v", "--verbose", is_flag=True, help="Log intermediate results to stderr.")
@click.pass_context
def main(ctx: click.Context, config_path: Path | None, verbose: bool) -> None:
    """Ricci curvature and prescribed Ricci metrics on 5-dimensional nilpotent Lie groups."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        ctx.obj = load_config(config_path)
    except (FileNotFoundError, ValueError) as e:
        _fail(str(e))


@main.command()
@reports_errors
def algebras() -> None:
    """List the nine algebras with their nonzero brackets."""
    rows = []
    for entry in catalog():
        rows.append(
            {
                "brackets": ", ".join(entry.sc.brackets()) or "abelian",
                "id": entry.id,
                "lower_central_series": lower_central_series(entry.sc),
                "name": entry.name,
            }
        )
    click.echo(render({**_header("algebras"), "algebras": rows}))


@main.command()
@click.argument("algebra")
@reports_errors
def derive(algebra: str) -> None:
    """Compute a basis of the derivation algebra."""
    algebra_id = parse_algebra_id(algebra)
    space = derivation_space(get_entry(algebra_id).sc, _config(click.get_current_context()).tolerances)
    display = parametric_form(algebra_id)
    free = parametric_free_parameters(algebra_id)
    if len(free) != space.dimension:
        logger.warning(
            f"{algebra}: null space has dimension {space.dimension}, parametric form has {len(free)} parameters"
        )
    doc = _header("derive", algebra_id)
    doc["outputs"] = {
        "basis": space.basis,
        "dimension": space.dimension,
        "parametric": {
            "free_parameters": list(free),
            "matrix": [[str(display[i, j]) for j in range(display.cols)] for i in range(display.rows)],
        },
    }
    click.echo(render(doc))


@main.command("reduce")
@click.argument("algebra")
@click.option("--gram", "gram_path", type=click.Path(path_type=Path), required=True, help="JSON Gram matrix file.")
@reports_errors
def reduce_command(algebra: str, gram_path: Path) -> None:
    """Reduce a metric to its representative family."""
    algebra_id = parse_algebra_id(algebra)
    tol = _config(click.get_current_context()).tolerances
    inner = _gram(gram_path, tol)
    reduction = reduce(algebra_id, gram_to_gl(inner), tol)
    doc = _header("reduce", algebra_id)
    doc["inputs"] = {"gram": inner.gram}
    doc["outputs"] = {
        "automorphism_defect": automorphism_defect(get_entry(algebra_id).sc, reduction.phi),
        "case": reduction.rep.case,
        "coefficients": dict(reduction.coeffs.values),
        "entries": dict(reduction.rep.entries),
        "orthogonality_defect": reduction.orthogonality_defect(),
        "phi": reduction.phi,
        "q": reduction.q,
        "representative": reduction.rep.matrix,
        "residual": reduction.residual,
    }
    click.echo(render(doc))


@main.command()
@click.argument("algebra")
@click.option("--gram", "gram_path", type=click.Path(path_type=Path), required=True, help="JSON Gram matrix file.")
@reports_errors
def frame(algebra: str, gram_path: Path) -> None:
    """Milnor frame of a metric: coefficients, scale eta and frame vectors."""
    algebra_id = parse_algebra_id(algebra)
    tol = _config(click.get_current_context()).tolerances
    inner = _gram(gram_path, tol)
    milnor = milnor_frame(algebra_id, inner, tol)
    doc = _header("frame", algebra_id)
    doc["inputs"] = {"gram": inner.gram}
    doc["outputs"] = {
        "case": milnor.coeffs.case,
        "coefficients": dict(milnor.coeffs.values),
        "eta": milnor.eta,
        "orthonormality_defect": milnor.orthonormality_defect(inner.gram),
        "vectors": milnor.V.T,
    }
    click.echo(render(doc))


@main.command()
@click.argument("algebra")
@click.option("--coeffs", help="Frame coefficients, e.g. 'alpha=2,beta=1'.")
@click.option("--gram", "gram_path", type=click.Path(path_type=Path), help="JSON Gram matrix file.")
@click.option("--case", type=click.Choice(CASES), help="Frame family for --coeffs (A4,1+A1 only).")
@reports_errors
def ricci(algebra: str, coeffs: str | None, gram_path: Path | None, case: str | None) -> None:
    """Ricci matrix by the general formula and by the closed form."""
    if (coeffs is None) == (gram_path is None):
        _fail("Give exactly one of --coeffs and --gram")
    algebra_id = parse_algebra_id(algebra)
    tol = _config(click.get_current_context()).tolerances
    doc = _header("ricci", algebra_id)
    outputs: dict[str, Any] = {}

    if coeffs is not None:
        frame_coeffs = _coefficients(algebra_id, coeffs, case)
        doc["inputs"] = {"case": frame_coeffs.case, "coefficients": dict(frame_coeffs.values)}
    else:
        assert gram_path is not None
        inner = _gram(gram_path, tol)
        milnor = milnor_frame(algebra_id, inner, tol)
        frame_coeffs = milnor.coeffs
        doc["inputs"] = {"gram": inner.gram}
        outputs["eta"] = milnor.eta
        outputs["frame_coefficients"] = dict(frame_coeffs.values)
        outputs["reference_tensor"] = ricci_tensor_reference(algebra_id, inner, tol)

    oracle = ricci_nilpotent(frame_structure_constants(frame_coeffs))
    closed = closed_form_ricci(frame_coeffs)
    outputs.update(
        {
            "case": frame_coeffs.case,
            "closed_form": closed.m,
            "discrepancy": oracle.max_difference(closed),
            "ricci": oracle.m,
            "scalar_curvature": oracle.scalar,
        }
    )
    doc["outputs"] = outputs
    click.echo(render(doc))


@main.command()
@click.argument("algebra", required=False)
@click.option("--tensor", "tensor_path", type=click.Path(path_type=Path), help="JSON prescribed tensor file.")
@click.option(
    "--batch",
    "batch_dir",
    type=click.Path(path_type=Path, file_okay=False),
    help="Directory of tensor files, solved concurrently and reported in filename order.",
)
@reports_errors
def solve(algebra: str | None, tensor_path: Path | None, batch_dir: Path | None) -> None:
    """
    Decide whether Ric(g) = t^2 T has a solution and construct one.

    Exit status is 0 when solvable, 2 when the tensor is valid but no metric
    exists (or a branch guard vanished).
    """
    if (tensor_path is None) == (batch_dir is None):
        _fail("Give exactly one of --tensor and --batch")
    ctx = click.get_current_context()
    config = _config(ctx)
    algebra_id = parse_algebra_id(algebra) if algebra else None

    if tensor_path is not None:
        file_id, tensor = _tensor(tensor_path, algebra_id, config.tolerances)
        result = solve_report(file_id, tensor, config.tolerances)
        doc = _header("solve", file_id)
        doc["inputs"] = {"tensor": str(tensor_path)}
        doc["outputs"] = _result_document(result)
        click.echo(render(doc))
        if not result.solvable:
            raise SystemExit(EXIT_UNSOLVABLE)
        return

    assert batch_dir is not None
    if not batch_dir.is_dir():
        raise FileNotFoundError(f"Batch directory not found: {batch_dir}")
    paths = sorted(batch_dir.glob("*.json"), key=lambda p: p.name)
    items = [_tensor(path, algebra_id, config.tolerances) for path in paths]
    logger.debug(f"Solving {len(items)} tensors with {config.batch_workers} workers")
    results = solve_batch(items, config.batch_workers, config.tolerances)
    doc = _header("solve")
    doc["results"] = [
        {"algebra": get_entry(r.id).name, "file": path.name, **_result_document(r)}
        for path, r in zip(paths, results, strict=True)
    ]
    click.echo(render(doc))
    if not all(r.solvable for r in results):
        raise SystemExit(EXIT_UNSOLVABLE)


@main.command()
@click.argument("algebra")
@click.option("--tensor", "tensor_path", type=click.Path(path_type=Path), required=True, help="JSON tensor file.")
@click.option("--coeffs", required=True, help="Frame coefficients, e.g. 'alpha=2,beta=1'.")
@click.option("--t", "t", type=float, default=1.0, show_default=True, help="Scale t in Ric = t^2 T.")
@click.option("--case", type=click.Choice(CASES), help="Frame family (A4,1+A1 only).")
@reports_errors
def verify(algebra: str, tensor_path: Path, coeffs: str, t: float, case: str | None) -> None:
    """Residual of Ric(coeffs) = t^2 T; exit status 2 when it exceeds the tolerance."""
    if t == 0:
        _fail("--t must be nonzero")
    algebra_id = parse_algebra_id(algebra)
    tol = _config(click.get_current_context()).tolerances
    _, tensor = _tensor(tensor_path, algebra_id, tol)
    frame_coeffs = _coefficients(algebra_id, coeffs, case)
    candidate = Solution(algebra_id, frame_coeffs, t, 0.0, case=frame_coeffs.case)
    residual = verify_solution(algebra_id, candidate, tensor)
    doc = _header("verify", algebra_id)
    doc["inputs"] = {"coefficients": dict(frame_coeffs.values), "t": t, "tensor": str(tensor_path)}
    doc["outputs"] = {"residual": residual, "tolerance": tol.residual, "verified": residual <= tol.residual}
    click.echo(render(doc))
    if residual > tol.residual:
        raise SystemExit(EXIT_UNSOLVABLE)


@main.command()
def errata() -> None:
    """List the corrections applied to the published formulas."""
    rows = [
        {
            "corrected": e.corrected,
            "evidence": e.evidence,
            "key": e.key,
            "location": e.location,
            "printed": e.printed,
        }
        for e in ERRATA.values()
    ]
    click.echo(render({**_header("errata"), "errata": rows}))


if __name__ == "__main__":
    main()
