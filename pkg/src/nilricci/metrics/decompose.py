"""Inner products and the triangular factorizations used by the reductions."""

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from nilricci.config import Tolerances, get_tolerances
from nilricci.errors import NilRicciError, NotPositiveDefiniteError, SingularMatrixError
from nilricci.types import DIM, Mat5


@dataclass(frozen=True, eq=False)
class InnerProduct:
    """
    Left-invariant metric given by its Gram matrix S_ij = <e_i, e_j>.

    The matrix is validated (shape, symmetry, positive definiteness) on
    construction, against ``tolerances`` when given. The symmetric part
    of an accepted matrix is stored.
    """

    gram: Mat5
    tolerances: Tolerances | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gram", np.array(self.gram, dtype=np.float64))
        self.validate(self.tolerances)
        gram = (self.gram + self.gram.T) / 2
        gram.setflags(write=False)
        object.__setattr__(self, "gram", gram)

    def validate(self, tolerances: Tolerances | None = None) -> None:
        """
        Check symmetry and positive definiteness.

        Raises:
            NilRicciError: If the matrix is not 5x5 or not symmetric.
            NotPositiveDefiniteError: With the first non-positive leading minor.
        """
        tol = tolerances or self.tolerances or get_tolerances()
        if self.gram.shape != (DIM, DIM):
            raise NilRicciError(f"Gram matrix must be 5x5, got shape {self.gram.shape}")
        asym = float(np.max(np.abs(self.gram - self.gram.T)))
        if asym > tol.symmetry:
            raise NilRicciError(f"Gram matrix is not symmetric (max asymmetry {asym:.3e})")
        for k in range(1, DIM + 1):
            minor = float(np.linalg.det(self.gram[:k, :k]))
            if minor <= 0:
                raise NotPositiveDefiniteError(k, minor)

    def norm_squared(self, v: np.ndarray) -> float:
        return float(v @ self.gram @ v)


def lq_decompose(g: Mat5, singular_tol: float = 1e-12) -> tuple[Mat5, Mat5]:
    """
    Factor g Q = L with L lower triangular, positive diagonal, Q orthogonal.

    Computed as the QR factorization of g^T with row signs flipped so that
    the diagonal of L is positive.

    Args:
        g: Invertible 5x5 matrix.
        singular_tol: |det(g)| at or below this is rejected.

    Returns:
        (L, Q).

    Raises:
        SingularMatrixError: If g is singular.
    """
    g = np.asarray(g, dtype=np.float64)
    det = float(np.linalg.det(g))
    if abs(det) <= singular_tol:
        raise SingularMatrixError("g", det)
    q, r = linalg.qr(g.T)
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    q = q * signs
    lower = (r * signs[:, None]).T
    return lower, q


def gram_to_gl(inner: InnerProduct) -> Mat5:
    """
    Matrix g with g^{-T} g^{-1} = S.

    With S = C C^T the lower Cholesky factorization, g = C^{-T}.

    Raises:
        NotPositiveDefiniteError: If the factorization fails; reports the
            first non-positive leading minor.
    """
    gram = inner.gram
    try:
        chol = linalg.cholesky(gram, lower=True)
    except linalg.LinAlgError as e:
        for k in range(1, DIM + 1):
            minor = float(np.linalg.det(gram[:k, :k]))
            if minor <= 0:
                raise NotPositiveDefiniteError(k, minor) from e
        raise NotPositiveDefiniteError(DIM, float(np.linalg.det(gram))) from e
    return linalg.inv(chol).T
