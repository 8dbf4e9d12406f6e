"""Tests for inner products and triangular factorizations."""

import numpy as np
import pytest

from nilricci.config import Tolerances
from nilricci.errors import NilRicciError, NotPositiveDefiniteError, SingularMatrixError
from nilricci.metrics.decompose import InnerProduct, gram_to_gl, lq_decompose
from nilricci.types import DIM

from tests.strategies import random_invertible, random_spd


def test_lq_decompose_factors_random_matrices(rng):
    for _ in range(50):
        g = random_invertible(rng)
        lower, q = lq_decompose(g)
        np.testing.assert_allclose(g @ q, lower, atol=1e-12)
        np.testing.assert_allclose(q.T @ q, np.eye(DIM), atol=1e-12)
        assert np.allclose(np.triu(lower, 1), 0.0, atol=1e-12)
        assert np.all(np.diag(lower) > 0)


def test_lq_decompose_rejects_singular_matrix():
    g = np.eye(DIM)
    g[2] = g[1]
    with pytest.raises(SingularMatrixError):
        lq_decompose(g)


def test_gram_to_gl_inverts_the_metric(rng):
    for _ in range(50):
        gram = random_spd(rng)
        g = gram_to_gl(InnerProduct(gram))
        inv = np.linalg.inv(g)
        np.testing.assert_allclose(inv.T @ inv, gram, atol=1e-10)


def test_inner_product_reports_failing_minor():
    gram = np.eye(DIM)
    gram[2, 2] = -1.0
    with pytest.raises(NotPositiveDefiniteError) as info:
        InnerProduct(gram)
    assert info.value.minor == 3


def test_inner_product_rejects_asymmetric_matrix():
    gram = np.eye(DIM)
    gram[0, 1] = 0.1
    with pytest.raises(NilRicciError, match="symmetric"):
        InnerProduct(gram)


def test_inner_product_symmetry_threshold_comes_from_tolerances():
    gram = np.eye(DIM)
    gram[0, 1] = 1e-6
    with pytest.raises(NilRicciError, match="symmetric"):
        InnerProduct(gram)
    inner = InnerProduct(gram, Tolerances(symmetry=1e-3))
    assert inner.gram[0, 1] == inner.gram[1, 0] == pytest.approx(5e-7)


def test_inner_product_rejects_wrong_shape():
    with pytest.raises(NilRicciError, match="5x5"):
        InnerProduct(np.eye(4))


def test_norm_squared():
    inner = InnerProduct(np.diag([1.0, 2.0, 3.0, 4.0, 5.0]))
    assert inner.norm_squared(np.ones(DIM)) == pytest.approx(15.0)
