"""Prescribed Ricci curvature: tensor shapes, conditions and the solver."""

from nilricci.prescribed.conditions import ConditionReport, check_conditions
from nilricci.prescribed.patterns import PrescribedTensor, TensorPattern, sparsity_pattern
from nilricci.prescribed.solver import Solution, forward_tensor, solve, solve_batch, verify_solution

__all__ = [
    "ConditionReport",
    "check_conditions",
    "PrescribedTensor",
    "TensorPattern",
    "sparsity_pattern",
    "Solution",
    "forward_tensor",
    "solve",
    "solve_batch",
    "verify_solution",
]
