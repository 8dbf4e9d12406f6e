"""Registry of misprints found while checking the published formulas.

Code that deviates from a printed formula references the erratum key, so a
reader can trace every correction back to a single record. The CLI exposes
the registry through ``nilricci errata`` and ERRATA.md mirrors it.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Erratum:
    """A single correction."""

    key: str
    location: str  # where the printed statement lives (algebra + object)
    printed: str
    corrected: str
    evidence: str  # how the correction was established


_ENTRIES = [
    # Derivation displays
    Erratum(
        key="der-a55-a21",
        location="A5,5 derivation display",
        printed="(2,1) entry a21 free, giving 11 parameters",
        corrected="a21 = 0, giving dimension 10",
        evidence="D[e1,e4] = 0 forces a21 [e2,e4] = a21 e5 = 0; null space rank is 10",
    ),
    Erratum(
        key="der-a52-a55",
        location="A5,2 derivation display",
        printed="a55 = a11 + 2 a22",
        corrected="a55 = 3 a11 + a22",
        evidence="D[e1,e4] = De5 gives a55 = a11 + a44 = 3 a11 + a22",
    ),
    # Representative families
    Erratum(
        key="rep-a41-second-a54",
        location="A4,1+A1 second representative family",
        printed="no (5,4) entry",
        corrected="(5,4) = a54 free; [v1,v2] also carries a v5 component delta",
        evidence="metrics modulo automorphisms have dimension 4 on this branch; the printed family has 3",
    ),
    Erratum(
        key="rep-a56-a53",
        location="A5,6 representative family",
        printed="no (5,3) entry; [v1,v2] = alpha v3 + beta v4",
        corrected="(5,3) = a53 free; [v1,v2] = alpha v3 + beta v4 + zeta v5",
        evidence="the printed family is one parameter short of the moduli dimension",
    ),
    Erratum(
        key="rep-a52-a42-a43",
        location="A5,2 representative family",
        printed="no (4,2) or (4,3) entries; [v1,v3] = gamma v4",
        corrected="(4,2), (4,3) free; [v1,v2] gains zeta v5, [v1,v3] gains theta v5",
        evidence="the printed family is two parameters short of the moduli dimension",
    ),
    Erratum(
        key="rep-a31-alpha",
        location="A3,1+2A1 frame proof",
        printed="alpha = a55",
        corrected="alpha = 1 / a55",
        evidence="[e1, e2] = e5 = (1 / a55) (h e5)",
    ),
    Erratum(
        key="frame-a56-delta",
        location="A5,6 frame proof, delta",
        printed="delta = (a44 + a21 a33) / a55",
        corrected="delta = (a43 + a21 a33) / a55",
        evidence="[h e1, h e3] = a33 e4 + (a43 + a21 a33) e5 expanded in the h basis",
    ),
    Erratum(
        key="frame-a51-v5",
        location="A5,1 frame statement",
        printed="[v1,v3] = gamma v4",
        corrected="[v1,v3] = gamma v5",
        evidence="[e1,e3] = e5 in the bracket table; the proof itself derives (1 / a55) v5",
    ),
    # Ricci displays
    Erratum(
        key="ricci-a41-second-33",
        location="A4,1+A1 second-case Ricci display, (3,3)",
        printed="-1/2 (alpha^2 - beta^2)",
        corrected="-1/2 (beta^2 - alpha^2)",
        evidence="brute-force Ricci formula; agrees with the first-case display",
    ),
    Erratum(
        key="ricci-a56-22",
        location="A5,6 Ricci display, (2,2)",
        printed="-1/2 (alpha^2 + beta^2)",
        corrected="-1/2 (alpha^2 + beta^2 + sigma^2)",
        evidence="brute-force Ricci formula; [v2,v3] = sigma v5 contributes sigma^2",
    ),
    # Prescribed Ricci conditions
    Erratum(
        key="cond-a54-joint",
        location="A5,4 solvability conditions",
        printed="(1)-(6) only",
        corrected="add c + d + e = 0 and f l >= 0",
        evidence="Ric trace identities and the sign of alpha^2 beta gamma; counterexamples pass (1)-(6) and fail to solve",
    ),
    Erratum(
        key="cond-a41-joint",
        location="A4,1+A1 first-branch solvability conditions",
        printed="(1)-(6) only",
        corrected="add e f <= 0",
        evidence="e = -beta gamma / 2 and f = alpha gamma / 2 share gamma",
    ),
    Erratum(
        key="cond-a41-second",
        location="A4,1+A1 second-branch tensor and conditions",
        printed="tensor display copied from the first branch; (1) 2b - c - a + d = 0",
        corrected="diagonal a..e with (3,4) = f; (1) b + c + d + e = 0",
        evidence="second-branch Ricci matrix with delta = 0; forward-generated tensors fail the printed (1)",
    ),
    Erratum(
        key="cond-a56-rederived",
        location="A5,6 solvability conditions",
        printed="conditions (1)-(13) with D = f^2 C / (i^2 - f^2)",
        corrected="P, Q > 0; E, A > 0; B >= 0; g^2 = B Q; i + f sqrt(Q/P) = 0; h = f sqrt(E/P) + g sqrt(A/Q)",
        evidence="re-derived from the corrected Ricci matrix restricted to zeta = 0; round-trip verified",
    ),
    Erratum(
        key="cond-a56-letter",
        location="A5,6 solvability conditions",
        printed="tensor display names (2,3) g while the conditions use l",
        corrected="(2,3) is g throughout",
        evidence="letter mismatch between display and condition list",
    ),
    Erratum(
        key="cond-a55-d-e",
        location="A5,5 solvability conditions, D and E",
        printed="D = a + 2c + 3d + 3e, E = -(a + c + 2d + 2e)",
        corrected="D = a + b + 2c + 2d + 3e, E = -(a + b + c + d + 2e); add h k >= 0, h i <= 0, f j >= 0, f h l <= 0",
        evidence="Ricci diagonal solved for beta^2 / 2 and alpha^2 / 2; forward-generated tensors",
    ),
    Erratum(
        key="cond-a53-l",
        location="A5,3 solvability condition (7)",
        printed="l +/- sqrt(B D) = 0",
        corrected="l^2 = C D; add h l <= 0 and f i <= 0",
        evidence="l = -beta gamma / 2 with gamma^2 = 2C and beta^2 = 2D",
    ),
    Erratum(
        key="cond-a51-trace",
        location="A5,1 solvability condition (1)",
        printed="a + b + c = 0",
        corrected="a - b - c = 0; add b + c + d + e = 0 and f l <= 0",
        evidence="R11 = R22 + R33 in the A5,1 Ricci matrix",
    ),
    Erratum(
        key="cond-a52-joint",
        location="A5,2 solvability conditions",
        printed="(1)-(7) with +/- signs independent",
        corrected="add f l <= 0",
        evidence="f = -beta gamma / 2 and l = alpha beta / 2 share beta",
    ),
]

ERRATA: dict[str, Erratum] = {e.key: e for e in _ENTRIES}


def get_erratum(key: str) -> Erratum:
    """
    Get an erratum by key.

    Raises:
        KeyError: If the key is not registered.
    """
    return ERRATA[key]


def errata_for(location_prefix: str) -> list[Erratum]:
    """All errata whose location starts with the given prefix (e.g. "A5,5")."""
    return [e for e in _ENTRIES if e.location.startswith(location_prefix)]
