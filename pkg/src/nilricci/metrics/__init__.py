"""Inner products, representative families and Milnor frames."""

from nilricci.metrics.decompose import InnerProduct, gram_to_gl, lq_decompose
from nilricci.metrics.frames import FrameCoefficients, FramePattern, MilnorFrame, frame_coefficients, frame_pattern
from nilricci.metrics.moduli import Reduction, Representative, milnor_frame, reduce

__all__ = [
    "InnerProduct",
    "gram_to_gl",
    "lq_decompose",
    "FrameCoefficients",
    "FramePattern",
    "MilnorFrame",
    "frame_coefficients",
    "frame_pattern",
    "Reduction",
    "Representative",
    "milnor_frame",
    "reduce",
]
