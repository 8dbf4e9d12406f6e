"""Ricci curvature: general formula and closed forms."""

from nilricci.curvature.closed_form import closed_form_ricci, quadratic_structure
from nilricci.curvature.ricci import RicciMatrix, ricci_general, ricci_nilpotent, scalar_curvature

__all__ = [
    "RicciMatrix",
    "closed_form_ricci",
    "quadratic_structure",
    "ricci_general",
    "ricci_nilpotent",
    "scalar_curvature",
]
