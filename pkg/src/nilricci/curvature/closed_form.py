"""Closed-form Ricci matrices of the Milnor frame families."""

import functools
import itertools
from collections.abc import Callable, Mapping

import numpy as np

from nilricci.curvature.ricci import RicciMatrix
from nilricci.metrics.frames import FrameCoefficients, frame_pattern
from nilricci.types import DIM, AlgebraId, FrameCase, Mat5

Values = Mapping[str, float]


def _symmetric(diagonal: list[float], off: dict[tuple[int, int], float]) -> Mat5:
    """Symmetric matrix from its diagonal and 1-based upper off-diagonal entries."""
    m = np.diag(np.asarray(diagonal, dtype=np.float64))
    for (i, j), value in off.items():
        m[i - 1, j - 1] = value
        m[j - 1, i - 1] = value
    return m


def _five_a1(v: Values) -> Mat5:
    return np.zeros((DIM, DIM))


def _a54(v: Values) -> Mat5:
    a, b, g = v["alpha"], v["beta"], v["gamma"]
    return -0.5 * _symmetric(
        [a * a + b * b, g * g, a * a + g * g, b * b, -(a * a + b * b + g * g)],
        {(1, 2): a * g, (3, 4): a * b},
    )


def _a31(v: Values) -> Mat5:
    a2 = v["alpha"] ** 2
    return -0.5 * _symmetric([a2, a2, 0.0, 0.0, -a2], {})


def _a41_first(v: Values) -> Mat5:
    a, b, g = v["alpha"], v["beta"], v["gamma"]
    return _symmetric(
        [
            -0.5 * (a * a + b * b + g * g),
            -0.5 * (a * a + g * g),
            -0.5 * (b * b - a * a),
            0.0,
            0.5 * (b * b + g * g),
        ],
        {(2, 3): -0.5 * b * g, (3, 5): 0.5 * a * g},
    )


def _a41_second(v: Values) -> Mat5:
    a, b, g, d = v["alpha"], v["beta"], v["gamma"], v["delta"]
    return _symmetric(
        [
            -0.5 * (a * a + b * b + g * g + d * d),
            -0.5 * (a * a + g * g + d * d),
            # erratum ricci-a41-second-33
            -0.5 * (b * b - a * a),
            0.5 * g * g,
            0.5 * (b * b + d * d),
        ],
        {(2, 3): -0.5 * b * d, (3, 4): 0.5 * a * g, (3, 5): 0.5 * a * d, (4, 5): 0.5 * g * d},
    )


def _a56(v: Values) -> Mat5:
    a, b, g, d = v["alpha"], v["beta"], v["gamma"], v["delta"]
    e, s, z = v["epsilon"], v["sigma"], v["zeta"]
    return _symmetric(
        [
            -0.5 * (a * a + b * b + g * g + d * d + e * e + z * z),
            # erratum ricci-a56-22
            -0.5 * (a * a + b * b + s * s + z * z),
            -0.5 * (g * g + d * d + s * s - a * a),
            -0.5 * (e * e - b * b - g * g),
            0.5 * (d * d + e * e + s * s + z * z),
        ],
        {
            (1, 2): -0.5 * d * s,
            (1, 3): 0.5 * z * s,
            (2, 3): -0.5 * (b * g + d * z),
            (2, 4): -0.5 * z * e,
            (3, 4): -0.5 * (d * e - a * b),
            (3, 5): 0.5 * a * z,
            (4, 5): 0.5 * (g * d + b * z),
        },
    )


def _a55(v: Values) -> Mat5:
    a, b, g, d, e = v["alpha"], v["beta"], v["gamma"], v["delta"], v["epsilon"]
    return _symmetric(
        [
            -0.5 * (a * a + b * b + g * g),
            -0.5 * (a * a + b * b + d * d + e * e),
            -0.5 * (g * g + d * d),
            -0.5 * (e * e - a * a),
            0.5 * (b * b + g * g + d * d + e * e),
        ],
        {
            (1, 2): -0.5 * g * d,
            (1, 3): 0.5 * b * d,
            (1, 4): 0.5 * b * e,
            (2, 3): -0.5 * b * g,
            (3, 4): -0.5 * d * e,
            (4, 5): 0.5 * a * b,
        },
    )


def _a53(v: Values) -> Mat5:
    a, b, g, d, e = v["alpha"], v["beta"], v["gamma"], v["delta"], v["epsilon"]
    return _symmetric(
        [
            -0.5 * (a * a + b * b + g * g + d * d),
            -0.5 * (a * a + b * b + e * e),
            -0.5 * (g * g + d * d + e * e - a * a),
            0.5 * (b * b + g * g),
            0.5 * (d * d + e * e),
        ],
        {(1, 2): -0.5 * d * e, (2, 3): -0.5 * b * g, (3, 4): 0.5 * a * b, (4, 5): 0.5 * g * d},
    )


def _a51(v: Values) -> Mat5:
    a, b, g = v["alpha"], v["beta"], v["gamma"]
    return _symmetric(
        [
            -0.5 * (a * a + b * b + g * g),
            -0.5 * (a * a + b * b),
            -0.5 * g * g,
            0.5 * a * a,
            0.5 * (b * b + g * g),
        ],
        {(2, 3): -0.5 * b * g, (4, 5): 0.5 * a * b},
    )


def _a52(v: Values) -> Mat5:
    a, b, g, d = v["alpha"], v["beta"], v["gamma"], v["delta"]
    z, t = v["zeta"], v["theta"]
    return _symmetric(
        [
            -0.5 * (a * a + b * b + g * g + d * d + z * z + t * t),
            -0.5 * (a * a + b * b + z * z),
            -0.5 * (g * g + t * t - a * a),
            -0.5 * (d * d - b * b - g * g),
            0.5 * (d * d + z * z + t * t),
        ],
        {
            (2, 3): -0.5 * (b * g + z * t),
            (2, 4): -0.5 * z * d,
            (3, 4): -0.5 * (t * d - a * b),
            (3, 5): 0.5 * a * z,
            (4, 5): 0.5 * (b * z + g * t),
        },
    )


CLOSED_FORMS: dict[tuple[AlgebraId, FrameCase], Callable[[Values], Mat5]] = {
    ("FiveA1", "main"): _five_a1,
    ("A54", "main"): _a54,
    ("A31plus2A1", "main"): _a31,
    ("A41plusA1", "first"): _a41_first,
    ("A41plusA1", "second"): _a41_second,
    ("A56", "main"): _a56,
    ("A55", "main"): _a55,
    ("A53", "main"): _a53,
    ("A51", "main"): _a51,
    ("A52", "main"): _a52,
}


def evaluate_closed_form(algebra_id: AlgebraId, case: FrameCase, values: Values) -> Mat5:
    """Closed-form matrix without sign-domain checks; missing names count as 0."""
    names = frame_pattern(algebra_id, case).names
    full = {n: float(values.get(n, 0.0)) for n in names}
    return CLOSED_FORMS[(algebra_id, case)](full)


def closed_form_ricci(coeffs: FrameCoefficients) -> RicciMatrix:
    """
    Ricci matrix of a Milnor frame from its closed form.

    Raises:
        SignDomainError: If the coefficients are not admissible.
    """
    coeffs.check_signs()
    return RicciMatrix(evaluate_closed_form(coeffs.id, coeffs.case, coeffs.values))


@functools.cache
def quadratic_structure(algebra_id: AlgebraId, case: FrameCase | None = None) -> tuple[tuple[str, ...], np.ndarray]:
    """
    Polarize the closed form into per-entry quadratic forms.

    Returns:
        (names, Q) with Q of shape (5, 5, n, n) such that
        Ric[i, j] = x^T Q[i, j] x for the coefficient vector x in ``names`` order.
    """
    pattern = frame_pattern(algebra_id, case)
    names = pattern.names
    n = len(names)

    def at(weights: dict[str, float]) -> Mat5:
        return evaluate_closed_form(algebra_id, pattern.case, weights)

    q = np.zeros((DIM, DIM, n, n))
    for p, name in enumerate(names):
        q[:, :, p, p] = at({name: 1.0})
    for p, r in itertools.combinations(range(n), 2):
        mixed = at({names[p]: 1.0, names[r]: 1.0}) - q[:, :, p, p] - q[:, :, r, r]
        q[:, :, p, r] = q[:, :, r, p] = 0.5 * mixed
    q.setflags(write=False)
    return names, q
