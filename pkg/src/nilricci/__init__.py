"""Left-invariant Ricci geometry on the 5-dimensional nilpotent Lie groups."""

__version__ = "0.1.0"

# High-level Python API
from nilricci.algebra.catalog import StructureConstants, catalog, get_entry, parse_algebra_id
from nilricci.config import Config, Tolerances, load_config
from nilricci.curvature.closed_form import closed_form_ricci
from nilricci.curvature.ricci import RicciMatrix, ricci_general, ricci_nilpotent
from nilricci.metrics.decompose import InnerProduct
from nilricci.metrics.frames import FrameCoefficients, MilnorFrame
from nilricci.metrics.moduli import milnor_frame, reduce
from nilricci.prescribed.conditions import check_conditions
from nilricci.prescribed.patterns import PrescribedTensor, sparsity_pattern
from nilricci.prescribed.solver import Solution, forward_tensor, solve, solve_batch, solve_report, verify_solution

__all__ = [
    "Config",
    "Tolerances",
    "load_config",
    "StructureConstants",
    "catalog",
    "get_entry",
    "parse_algebra_id",
    "InnerProduct",
    "FrameCoefficients",
    "MilnorFrame",
    "milnor_frame",
    "reduce",
    "RicciMatrix",
    "ricci_general",
    "ricci_nilpotent",
    "closed_form_ricci",
    "PrescribedTensor",
    "Solution",
    "sparsity_pattern",
    "check_conditions",
    "solve",
    "solve_report",
    "solve_batch",
    "forward_tensor",
    "verify_solution",
]
