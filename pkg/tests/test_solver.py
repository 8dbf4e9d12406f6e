"""Tests for the prescribed Ricci solver."""

import math
from dataclasses import replace

import numpy as np
import pytest

from nilricci.config import Tolerances
from nilricci.errors import DegenerateBranchError, PatternViolationError
from nilricci.metrics.frames import FrameCoefficients
from nilricci.prescribed.conditions import check_conditions
from nilricci.prescribed.patterns import PrescribedTensor, sparsity_pattern
from nilricci.prescribed.solver import (
    SUFFICIENCY_ONLY,
    forward_tensor,
    solve,
    solve_batch,
    solve_report,
    verify_solution,
)

from tests.strategies import FAMILIES, random_coefficients


def test_a31_recovers_alpha():
    solution = solve("A31plus2A1", PrescribedTensor("A31plus2A1", np.diag([-1.0, -1.0, 0.0, 0.0, 1.0])))
    assert solution is not None
    assert solution.coeffs.alpha == pytest.approx(math.sqrt(2))
    assert solution.t == 1.0
    assert solution.residual <= 1e-12


def test_abelian_only_solves_zero():
    zero = solve("FiveA1", PrescribedTensor("FiveA1", np.zeros((5, 5))))
    assert zero is not None
    assert zero.residual == 0.0
    assert solve("FiveA1", PrescribedTensor("FiveA1", np.diag([1e-9, 0.0, 0.0, 0.0, 0.0]))) is None


def test_a54_recovers_coefficients():
    coeffs = FrameCoefficients.from_mapping("A54", {"alpha": 0.5, "beta": 1.0, "gamma": 2.0})
    solution = solve("A54", forward_tensor(coeffs))
    assert solution is not None
    assert solution.coeffs.max_difference(coeffs) < 1e-10


def test_a54_negative_alpha_is_recovered_from_off_diagonal_signs():
    coeffs = FrameCoefficients.from_mapping("A54", {"alpha": -0.7, "beta": 1.3, "gamma": 0.4})
    solution = solve("A54", forward_tensor(coeffs))
    assert solution is not None
    assert solution.coeffs.alpha == pytest.approx(-0.7)


@pytest.mark.parametrize("algebra_id, case", FAMILIES)
def test_round_trip(algebra_id, case, rng):
    for _ in range(200):
        tensor = forward_tensor(random_coefficients(rng, algebra_id, case))
        solution = solve(algebra_id, tensor)
        assert solution is not None
        assert solution.residual <= 1e-8
        assert verify_solution(algebra_id, solution, tensor) <= 1e-8
        assert check_conditions(algebra_id, tensor).satisfied
        assert solution.case == case


def test_a41_second_family_is_reported(rng):
    tensor = forward_tensor(random_coefficients(rng, "A41plusA1", "second"))
    solution = solve("A41plusA1", tensor)
    assert solution is not None
    assert solution.case == "second"


def test_forward_tensor_scales_with_t(rng):
    coeffs = random_coefficients(rng, "A55")
    assert np.allclose(forward_tensor(coeffs, t=2.0).m, forward_tensor(coeffs).m / 4)
    with pytest.raises(ValueError):
        forward_tensor(coeffs, t=0.0)


@pytest.mark.parametrize("factor", [0.5, 2.0])
def test_scaled_solution_solves_the_same_equation(factor, rng):
    tensor = forward_tensor(random_coefficients(rng, "A53"))
    solution = solve("A53", tensor)
    assert solution is not None
    scaled = solution.scaled(factor)
    assert scaled.t == factor
    assert verify_solution("A53", scaled, tensor) <= 1e-8


def test_scaling_rejects_nonpositive_factor():
    solution = solve("A31plus2A1", PrescribedTensor("A31plus2A1", np.diag([-1.0, -1.0, 0.0, 0.0, 1.0])))
    assert solution is not None
    with pytest.raises(ValueError):
        solution.scaled(0.0)


@pytest.mark.parametrize("algebra_id", ["A54", "A31plus2A1", "A51", "A52"])
def test_perturbed_diagonal_is_unsolvable(algebra_id, rng):
    tensor = forward_tensor(random_coefficients(rng, algebra_id))
    m = tensor.m.copy()
    m[0, 0] += 1e-3
    assert solve(algebra_id, PrescribedTensor(algebra_id, m)) is None


def _random_pattern_tensor(rng: np.random.Generator, algebra_id: str, case: str) -> PrescribedTensor:
    pattern = next(p for p in sparsity_pattern(algebra_id) if p.case == case)
    letters = {letter: float(rng.uniform(-2.0, 2.0)) for letter in pattern.letters}
    return PrescribedTensor.from_letters(algebra_id, letters, pattern.case)


def _sign_flipped(rng: np.random.Generator, tensor: PrescribedTensor) -> PrescribedTensor:
    """Flip one off-diagonal pair of a tensor, when it has any."""
    off = [(i, j) for i in range(5) for j in range(i + 1, 5) if abs(tensor.m[i, j]) > 1e-6]
    if not off:
        return tensor
    i, j = off[rng.integers(len(off))]
    m = tensor.m.copy()
    m[i, j] = m[j, i] = -m[i, j]
    return PrescribedTensor(tensor.id, m)


@pytest.mark.parametrize("algebra_id, case", FAMILIES)
def test_conditions_agree_with_solver(algebra_id, case, rng):
    tensors = [_random_pattern_tensor(rng, algebra_id, case) for _ in range(200)]
    for _ in range(100):
        forward = forward_tensor(random_coefficients(rng, algebra_id, case))
        tensors += [forward, _sign_flipped(rng, forward)]
    for tensor in tensors:
        result = solve_report(algebra_id, tensor)
        if algebra_id in SUFFICIENCY_ONLY:
            assert not result.report.satisfied or result.solvable
        else:
            assert result.report.satisfied == result.solvable


def test_a56_is_marked_sufficiency_only(rng):
    solution = solve("A56", forward_tensor(random_coefficients(rng, "A56")))
    assert solution is not None
    assert solution.sufficiency_only
    assert solution.coeffs.zeta == 0.0


def test_a56_vanishing_guard_is_degenerate():
    tensor = PrescribedTensor("A56", np.diag([-1.0, 1.0, 1.0, -1.0, -1.0]))
    with pytest.raises(DegenerateBranchError, match="sigma"):
        solve("A56", tensor)
    result = solve_report("A56", tensor)
    assert not result.solvable
    assert result.degenerate is not None


def test_off_pattern_tensor_is_rejected():
    m = np.zeros((5, 5))
    m[0, 4] = m[4, 0] = 1.0
    with pytest.raises(PatternViolationError):
        solve("A52", PrescribedTensor("A52", m))


def test_verify_detects_perturbed_coefficients():
    tensor = PrescribedTensor("A31plus2A1", np.diag([-1.0, -1.0, 0.0, 0.0, 1.0]))
    solution = solve("A31plus2A1", tensor)
    assert solution is not None
    moved = FrameCoefficients.from_mapping("A31plus2A1", {"alpha": solution.coeffs["alpha"] + 0.01})
    assert verify_solution("A31plus2A1", replace(solution, coeffs=moved), tensor) > 1e-3


def test_residual_tolerance_is_configurable(rng):
    tensor = forward_tensor(random_coefficients(rng, "A54"))
    m = tensor.m.copy()
    m[4, 4] += 1e-7
    m[0, 0] -= 1e-7
    nudged = PrescribedTensor("A54", m)
    assert solve("A54", nudged) is None
    loose = Tolerances(equality=1e-5, residual=1e-5)
    assert solve("A54", nudged, loose) is not None


def test_batch_keeps_input_order(rng):
    items = [
        ("A54", forward_tensor(random_coefficients(rng, "A54"))),
        ("A54", PrescribedTensor("A54", np.diag([-1.0, -1.0, 0.0, 0.0, 2.0]))),
        ("FiveA1", PrescribedTensor("FiveA1", np.zeros((5, 5)))),
        ("A55", forward_tensor(random_coefficients(rng, "A55"))),
    ]
    results = solve_batch(items, workers=3)
    assert [r.id for r in results] == ["A54", "A54", "FiveA1", "A55"]
    assert [r.solvable for r in results] == [True, False, True, True]
