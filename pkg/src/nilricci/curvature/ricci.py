"""Ricci curvature of left-invariant metrics from structure constants.

Every function here takes structure constants expressed in an orthonormal
frame, so adjoints are matrix transposes.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from nilricci.algebra.catalog import StructureConstants, get_entry
from nilricci.algebra.structure import ad, change_basis
from nilricci.config import Tolerances, get_tolerances
from nilricci.errors import NilRicciError
from nilricci.metrics.decompose import InnerProduct
from nilricci.metrics.frames import frame_structure_constants
from nilricci.metrics.moduli import milnor_frame
from nilricci.types import DIM, AlgebraId, Mat5, Vec5

logger = logging.getLogger(__name__)

# Agreement required between the two evaluations of tr(J_u J_v)
J_TRACE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class RicciMatrix:
    """ric(v_i, v_j) in an orthonormal frame."""

    m: Mat5

    def __post_init__(self) -> None:
        m = np.array(self.m, dtype=np.float64)
        asym = float(np.max(np.abs(m - m.T)))
        if asym > 1e-10:
            raise NilRicciError(f"Ricci matrix is not symmetric (max asymmetry {asym:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @property
    def scalar(self) -> float:
        return float(np.trace(self.m))

    def max_difference(self, other: "RicciMatrix | Mat5") -> float:
        other_m = other.m if isinstance(other, RicciMatrix) else np.asarray(other)
        return float(np.max(np.abs(self.m - other_m)))


@dataclass(frozen=True, eq=False)
class GeometrySnapshot:
    """Killing form, mean curvature vector and J operators of the frame vectors."""

    killing: Mat5
    mean_curvature: Vec5
    j_ops: list[Mat5] = field(repr=False)


def j_operator(sc: StructureConstants, u: Vec5) -> Mat5:
    """
    J_u with <J_u v, w> = <u, [v, w]>.

    Column j is ad(e_j)^T u.
    """
    return np.einsum("jmk,k->mj", sc.c, u)


def killing_form(sc: StructureConstants) -> Mat5:
    """B(e_i, e_j) = tr(ad_i ad_j)."""
    return np.einsum("imk,jkm->ij", sc.c, sc.c)


def mean_curvature(sc: StructureConstants) -> Vec5:
    """H with <H, e_i> = tr(ad_{e_i})."""
    return np.einsum("ikk->i", sc.c)


def _ad_adjoint_term(sc: StructureConstants) -> Mat5:
    """tr(ad_u ad_v^*) over the frame."""
    return np.einsum("umk,vmk->uv", sc.c, sc.c)


def _j_trace_term(sc: StructureConstants) -> Mat5:
    """tr(J_u J_v), cross-checked against -sum_{i,j} <u,[e_i,e_j]><v,[e_i,e_j]>."""
    eye = np.eye(DIM)
    j_ops = [j_operator(sc, eye[a]) for a in range(DIM)]
    direct = np.array([[np.trace(j_ops[a] @ j_ops[b]) for b in range(DIM)] for a in range(DIM)])
    identity = -np.einsum("ija,ijb->ab", sc.c, sc.c)
    gap = float(np.max(np.abs(direct - identity)))
    if gap > J_TRACE_TOL * max(1.0, float(np.max(np.abs(identity)))):
        logger.warning(f"tr(J_u J_v) evaluations disagree by {gap:.3e}")
    return direct


def ricci_nilpotent(sc: StructureConstants) -> RicciMatrix:
    """
    Ricci matrix of a nilpotent algebra in an orthonormal frame.

    ric(u, v) = -1/2 tr(ad_u ad_v^*) - 1/4 tr(J_u J_v).
    """
    m = -0.5 * _ad_adjoint_term(sc) - 0.25 * _j_trace_term(sc)
    return RicciMatrix(0.5 * (m + m.T))


def ricci_general(sc: StructureConstants) -> RicciMatrix:
    """
    Ricci matrix of an arbitrary Lie algebra in an orthonormal frame.

    Adds the Killing form term -1/2 B(u, v) and the mean curvature term
    -1/2 (<[H, u], v> + <[H, v], u>) to the nilpotent formula.
    """
    ad_h = ad(sc, mean_curvature(sc))
    m = (
        -0.5 * killing_form(sc)
        - 0.5 * _ad_adjoint_term(sc)
        - 0.25 * _j_trace_term(sc)
        - 0.5 * (ad_h + ad_h.T)
    )
    return RicciMatrix(0.5 * (m + m.T))


def scalar_curvature(sc: StructureConstants) -> float:
    return ricci_nilpotent(sc).scalar


def geometry_snapshot(sc: StructureConstants) -> GeometrySnapshot:
    eye = np.eye(DIM)
    return GeometrySnapshot(
        killing=killing_form(sc),
        mean_curvature=mean_curvature(sc),
        j_ops=[j_operator(sc, eye[a]) for a in range(DIM)],
    )


def ricci_from_metric(
    algebra_id: AlgebraId, inner: InnerProduct, tolerances: Tolerances | None = None
) -> tuple[RicciMatrix, Mat5]:
    """
    Ricci matrix of a metric in its Milnor frame.

    Returns:
        (Ricci matrix in the frame, frame matrix V).
    """
    frame = milnor_frame(algebra_id, inner, tolerances or get_tolerances())
    return ricci_nilpotent(frame_structure_constants(frame.coeffs)), frame.V


def ricci_tensor_reference(
    algebra_id: AlgebraId, inner: InnerProduct, tolerances: Tolerances | None = None
) -> Mat5:
    """
    Ricci (0,2)-tensor of a metric in the reference basis e_1..e_5.

    Computed as V^{-T} Ric V^{-1} from the Milnor frame. The result does not
    change when the metric is multiplied by a positive constant.
    """
    tol = tolerances or get_tolerances()
    frame = milnor_frame(algebra_id, inner, tol)
    frame_sc = change_basis(get_entry(algebra_id).sc, frame.V, tol.singular)
    ric = ricci_nilpotent(frame_sc).m
    inv = np.linalg.inv(frame.V)
    return inv.T @ ric @ inv
