"""Tests for representative families and the reduction of metrics."""

import numpy as np
import pytest

from nilricci.algebra.catalog import get_entry
from nilricci.errors import SignDomainError, SingularMatrixError, UnknownEntryError
from nilricci.metrics.frames import FrameCoefficients, frame_coefficients
from nilricci.metrics.moduli import (
    Representative,
    automorphism_defect,
    is_automorphism,
    reduce,
    representative_from_coefficients,
    representative_pattern,
)
from nilricci.types import ALGEBRA_IDS, DIM

from tests.strategies import FAMILIES, random_coefficients, random_invertible


@pytest.mark.parametrize("algebra_id", ALGEBRA_IDS)
def test_reduction_of_random_matrices(algebra_id, rng):
    sc = get_entry(algebra_id).sc
    for _ in range(100):
        g = random_invertible(rng)
        reduction = reduce(algebra_id, g)
        assert reduction.residual <= 1e-8
        np.testing.assert_allclose(reduction.phi @ g @ reduction.q, reduction.rep.matrix, atol=1e-8)
        assert reduction.rep.pattern_defect() == 0.0
        assert reduction.rep.positivity_holds()
        scale = max(1.0, float(np.max(np.abs(reduction.phi)))) ** 2
        assert automorphism_defect(sc, reduction.phi) <= 1e-8 * scale
        assert reduction.orthogonality_defect() <= 1e-9


@pytest.mark.parametrize("algebra_id, case", FAMILIES)
def test_representative_frame_has_the_given_coefficients(algebra_id, case, rng):
    sc = get_entry(algebra_id).sc
    for _ in range(20):
        coeffs = random_coefficients(rng, algebra_id, case, extras=True)
        rep = representative_from_coefficients(coeffs)
        assert rep.positivity_holds()
        reread = frame_coefficients(algebra_id, rep.matrix, sc, case)
        assert reread.max_difference(coeffs) <= 1e-10


def test_reduction_of_the_identity():
    reduction = reduce("A55", np.eye(DIM))
    np.testing.assert_allclose(reduction.rep.matrix, np.eye(DIM), atol=1e-12)
    assert reduction.coeffs.values == {"alpha": 1.0, "beta": 0.0, "gamma": 1.0, "delta": 0.0, "epsilon": 1.0}


def test_reduction_rejects_singular_matrix():
    g = np.eye(DIM)
    g[:, 4] = 0.0
    with pytest.raises(SingularMatrixError):
        reduce("A54", g)


def test_second_a41_family_needs_nonzero_gamma():
    coeffs = FrameCoefficients.from_mapping("A41plusA1", {"alpha": 1.0, "beta": 1.0}, "second")
    with pytest.raises(SignDomainError, match="gamma"):
        representative_from_coefficients(coeffs)


def test_representative_entries_are_checked():
    with pytest.raises(UnknownEntryError, match="a99"):
        Representative.from_entries("A54", {"a99": 1.0})
    rep = Representative.from_entries("A54", {"a21": 0.3, "a44": -1.0, "a55": 2.0})
    assert rep.matrix[1, 0] == 0.3
    assert rep.matrix[0, 0] == 1.0
    assert not rep.positivity_holds()


def test_pattern_defect_measures_entries_outside_the_family():
    rep = Representative.from_entries("A51", {"a44": 1.0, "a55": 1.0})
    disturbed = rep.matrix.copy()
    disturbed[0, 4] = 0.25
    assert rep.pattern_defect(disturbed) == pytest.approx(0.25)
    assert representative_pattern("A51").positive == ("a44", "a55")


def test_automorphism_checks():
    sc = get_entry("A54").sc
    scaling = np.diag([1.0, 1.0, 1.0, 1.0, 1.0])
    assert is_automorphism(sc, scaling, 1e-12)
    stretched = np.diag([2.0, 1.0, 1.0, 1.0, 1.0])
    assert not is_automorphism(sc, stretched, 1e-6)
    with pytest.raises(ValueError):
        is_automorphism(sc, scaling, 0.0)
