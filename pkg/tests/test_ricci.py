"""Tests for the general Ricci formula and the closed forms."""

import numpy as np
import pytest

from nilricci.algebra.catalog import StructureConstants, get_entry
from nilricci.algebra.structure import bracket, bracket_norms_squared, derived_algebra
from nilricci.curvature.closed_form import closed_form_ricci, evaluate_closed_form, quadratic_structure
from nilricci.curvature.ricci import (
    RicciMatrix,
    geometry_snapshot,
    j_operator,
    killing_form,
    mean_curvature,
    ricci_from_metric,
    ricci_general,
    ricci_nilpotent,
    ricci_tensor_reference,
    scalar_curvature,
)
from nilricci.errors import NilRicciError, SignDomainError
from nilricci.metrics.decompose import InnerProduct
from nilricci.metrics.frames import FrameCoefficients, frame_structure_constants
from nilricci.types import ALGEBRA_IDS, DIM

from tests.strategies import FAMILIES, random_coefficients, random_spd


def test_abelian_algebra_is_flat():
    ric = ricci_nilpotent(get_entry("FiveA1").sc)
    assert np.all(ric.m == 0.0)


def test_j_operator_vanishes_on_the_abelian_algebra(rng):
    assert np.all(j_operator(get_entry("FiveA1").sc, rng.normal(size=DIM)) == 0.0)


@pytest.mark.parametrize("algebra_id", ALGEBRA_IDS)
def test_j_operator_vanishes_off_the_derived_algebra(algebra_id, rng):
    sc = get_entry(algebra_id).sc
    derived = derived_algebra(sc)
    u = rng.normal(size=DIM)
    u -= derived @ (derived.T @ u)
    np.testing.assert_allclose(j_operator(sc, u), np.zeros((DIM, DIM)), atol=1e-12)


def test_j_operator_of_the_a31_center():
    j = j_operator(get_entry("A31plus2A1").sc, np.eye(DIM)[4])
    expected = np.zeros((DIM, DIM))
    expected[1, 0], expected[0, 1] = 1.0, -1.0
    np.testing.assert_array_equal(j, expected)


@pytest.mark.parametrize("algebra_id", ALGEBRA_IDS)
def test_j_operator_pairs_with_the_bracket(algebra_id, rng):
    sc = get_entry(algebra_id).sc
    u, v, w = rng.normal(size=(3, DIM))
    assert (j_operator(sc, u) @ v) @ w == pytest.approx(u @ bracket(sc, v, w), abs=1e-12)


@pytest.mark.parametrize("algebra_id, case", FAMILIES)
def test_j_operators_are_skew(algebra_id, case, rng):
    for _ in range(100):
        sc = frame_structure_constants(random_coefficients(rng, algebra_id, case, extras=True))
        for j in geometry_snapshot(sc).j_ops:
            assert np.max(np.abs(j + j.T)) <= 1e-10


def test_a31_at_alpha_two():
    coeffs = FrameCoefficients.from_mapping("A31plus2A1", {"alpha": 2.0})
    expected = np.diag([-2.0, -2.0, 0.0, 0.0, 2.0])
    np.testing.assert_allclose(ricci_nilpotent(frame_structure_constants(coeffs)).m, expected, atol=1e-12)
    np.testing.assert_allclose(closed_form_ricci(coeffs).m, expected, atol=1e-12)


def test_a54_at_unit_coefficients():
    coeffs = FrameCoefficients.from_mapping("A54", {"alpha": 1.0, "beta": 1.0, "gamma": 1.0})
    expected = -0.5 * np.array(
        [
            [2.0, 1.0, 0.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 2.0, 1.0, 0.0],
            [0.0, 0.0, 1.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, -3.0],
        ]
    )
    np.testing.assert_allclose(ricci_nilpotent(frame_structure_constants(coeffs)).m, expected, atol=1e-12)
    np.testing.assert_allclose(closed_form_ricci(coeffs).m, expected, atol=1e-12)


@pytest.mark.parametrize("algebra_id, case", FAMILIES)
def test_closed_form_matches_general_formula(algebra_id, case, rng):
    for _ in range(100):
        coeffs = random_coefficients(rng, algebra_id, case, extras=True)
        oracle = ricci_nilpotent(frame_structure_constants(coeffs))
        assert oracle.max_difference(closed_form_ricci(coeffs)) <= 1e-10


def test_corrected_a41_second_entry():
    coeffs = FrameCoefficients.from_mapping(
        "A41plusA1", {"alpha": 1.0, "beta": 2.0, "gamma": 0.5, "delta": 0.0}, "second"
    )
    ric = ricci_nilpotent(frame_structure_constants(coeffs)).m
    assert ric[2, 2] == pytest.approx(-0.5 * (2.0**2 - 1.0**2))


@pytest.mark.parametrize("algebra_id, case", FAMILIES)
def test_general_formula_collapses_on_nilpotent_frames(algebra_id, case, rng):
    for _ in range(10):
        sc = frame_structure_constants(random_coefficients(rng, algebra_id, case, extras=True))
        assert np.max(np.abs(killing_form(sc))) <= 1e-12
        assert np.max(np.abs(mean_curvature(sc))) <= 1e-12
        assert ricci_general(sc).max_difference(ricci_nilpotent(sc)) <= 1e-10


def test_general_formula_on_the_hyperbolic_plane():
    # [e1,e2] = e2 is the hyperbolic plane (curvature -1) times a flat factor
    sc = StructureConstants.from_brackets({(1, 2): {2: 1.0}})
    np.testing.assert_allclose(ricci_general(sc).m, np.diag([-1.0, -1.0, 0.0, 0.0, 0.0]), atol=1e-12)
    snapshot = geometry_snapshot(sc)
    np.testing.assert_allclose(snapshot.mean_curvature, [1.0, 0.0, 0.0, 0.0, 0.0])
    assert snapshot.killing[0, 0] == pytest.approx(1.0)


@pytest.mark.parametrize("algebra_id, case", FAMILIES)
def test_scalar_curvature_is_minus_half_the_bracket_norms(algebra_id, case, rng):
    for _ in range(20):
        sc = frame_structure_constants(random_coefficients(rng, algebra_id, case))
        scalar = scalar_curvature(sc)
        assert scalar == pytest.approx(-0.5 * bracket_norms_squared(sc), abs=1e-9)
        if algebra_id != "FiveA1":
            assert scalar < 0


@pytest.mark.parametrize("algebra_id", ALGEBRA_IDS)
def test_reference_tensor_is_invariant_under_metric_scaling(algebra_id, rng):
    for _ in range(10):
        gram = random_spd(rng)
        one = ricci_tensor_reference(algebra_id, InnerProduct(gram))
        four = ricci_tensor_reference(algebra_id, InnerProduct(4.0 * gram))
        assert np.max(np.abs(one - four)) <= 1e-8


def test_ricci_from_standard_metric():
    ric, frame = ricci_from_metric("A54", InnerProduct(np.eye(DIM)))
    np.testing.assert_allclose(frame, np.eye(DIM), atol=1e-12)
    expected = evaluate_closed_form("A54", "main", {"beta": 1.0, "gamma": 1.0})
    np.testing.assert_allclose(ric.m, expected, atol=1e-12)


def test_closed_form_checks_sign_domains():
    with pytest.raises(SignDomainError):
        closed_form_ricci(FrameCoefficients.from_mapping("A55", {"alpha": -1.0}))


def test_ricci_matrix_must_be_symmetric():
    m = np.zeros((DIM, DIM))
    m[0, 1] = 1.0
    with pytest.raises(NilRicciError):
        RicciMatrix(m)


def test_quadratic_structure_reproduces_closed_form(rng):
    names, q = quadratic_structure("A56")
    coeffs = random_coefficients(rng, "A56", extras=True)
    x = np.array([coeffs[n] for n in names])
    polarized = np.einsum("ijpq,p,q->ij", q, x, x)
    np.testing.assert_allclose(polarized, closed_form_ricci(coeffs).m, atol=1e-12)
