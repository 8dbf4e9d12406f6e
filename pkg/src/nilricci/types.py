"""Type aliases used across the nilricci package."""

from typing import Literal

import numpy as np
from numpy.typing import NDArray

# Dense arrays (fixed dimension n=5)
Vec5 = NDArray[np.float64]  # shape (5,), coordinates in e1..e5
Mat5 = NDArray[np.float64]  # shape (5, 5), columns are images of e1..e5
Tensor5 = NDArray[np.float64]  # shape (5, 5, 5), c[i, j, k] = e_k coefficient of [e_i, e_j]

DIM = 5

# The nine 5-dimensional nilpotent Lie algebras
AlgebraId = Literal[
    "FiveA1",
    "A54",
    "A31plus2A1",
    "A41plusA1",
    "A56",
    "A55",
    "A53",
    "A51",
    "A52",
]

ALGEBRA_IDS: tuple[AlgebraId, ...] = (
    "FiveA1",
    "A54",
    "A31plus2A1",
    "A41plusA1",
    "A56",
    "A55",
    "A53",
    "A51",
    "A52",
)

# Case split of the A_{4,1}+A_1 families; every other algebra uses "main"
FrameCase = Literal["main", "first", "second"]

# Sign domain of a frame coefficient
SignDomain = Literal["positive", "negative", "free"]
