"""Reference closed forms and printed values for the generator sets.

They are kept apart from the code that derives them so the two can be
compared. Entries are stated as printed, including a few that turn out to be
wrong; the ``*_corrected`` functions hold what the gadgets actually produce.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .catalog import rx
from .catalog import Z as PAULI_Z

SQ2 = math.sqrt(2)
SQ3 = math.sqrt(3)
W = cmath.exp(1j * math.pi / 8)


def _m(rows) -> np.ndarray:
    return np.array(rows, dtype=np.complex128)


# --- fixed sets ---------------------------------------------------------------

A = _m([[1 + W**2, 1 - W**2], [1 - W**2, 1 + W**2]]) / (2 * W)
B = _m([[W, -W], [1 / W, 1 / W]]) / SQ2
C = _m([[1, W**2], [W**2, 1]]) / cmath.sqrt(1 - 1j)

D = _m([[-5j, 3 * SQ3], [-3 * SQ3, 1j]]) / (4 * SQ2)
E = _m([[5, 3j * SQ3], [1j * SQ3, 3]]) / (2 * math.sqrt(6))
F = _m([[5, -1j * SQ3], [1j * SQ3, 7]]) / (4 * SQ2)

H = _m([[2 - 1j, SQ3], [-SQ3, 2 + 1j]]) / (2 * SQ2)
I_PRINTED = _m([[math.sqrt(5) * (2 - 1j), 0], [-2 - 4j, SQ3 * (2 + 1j)]]) / 5
J = _m([[-3j * SQ3, -11], [11, -7j / SQ3]]) / 10

PRINTED = {"A": A, "B": B, "C": C, "D": D, "E": E, "F": F, "H": H, "I": I_PRINTED, "J": J}

# scalar claims for the fixed sets
CLAIMS = {
    "IQP": {"beta_B": -3 - 1 / SQ2, "beta_C": -2 + 2j, "gamma_BC": -1 + 1j,
            "commutator_BA": 1 + 1 / SQ2, "rule_value": 1 / SQ2, "tr_C": cmath.sqrt(2 + 2j)},
    "CCC": {"beta_E": -4 / 3, "beta_F": 0.5, "gamma_EF": 0.25,
            "jorgensen_FE": 0.75, "tr_D": -1j / SQ2},
    "T4P": {"beta_H": -2.0, "beta_I": -0.8, "gamma_HI": -36 / 125 + 48j / 125,
            "tan_lhs": math.sqrt(409) / 25, "tr_J": -8j / (5 * SQ3)},
}


# --- CZ+Z, parametrized by theta ------------------------------------------------

def den1(t: float) -> float:
    return -5 + 28 * math.cos(t) + 4 * math.cos(2 * t) + 4 * math.cos(3 * t) + math.cos(4 * t)


def den2(t: float) -> float:
    return -5 - 28 * math.cos(t) + 4 * math.cos(2 * t) - 4 * math.cos(3 * t) + math.cos(4 * t)


def det_c(i: int, t: float) -> float:
    c = math.cos
    return [
        math.sin(t) ** 4 / 4,
        (5 - 28 * c(t) - 4 * c(2 * t) - 4 * c(3 * t) - c(4 * t)) / 32,
        (5 + 28 * c(t) - 4 * c(2 * t) + 4 * c(3 * t) - c(4 * t)) / 32,
        c(t),
        -c(t),
    ][i]


def raw_c1(t: float) -> np.ndarray:
    c, s = math.cos, math.sin
    off = s(t) + 2 * s(2 * t) + s(3 * t)
    return _m([[-c(t) + 2 * c(2 * t) + c(3 * t) + 6, -1j * off],
               [1j * off, -7 * c(t) - 2 * c(2 * t) - c(3 * t) + 2]]) / 8


def raw_c2(t: float) -> np.ndarray:
    c, s = math.cos, math.sin
    return _m([[7 * c(t) - 2 * c(2 * t) + c(3 * t) + 2, -1j * (s(t) - 2 * s(2 * t) + s(3 * t))],
               [-8j * s(t / 2) ** 2 * s(t) * c(t), c(t) + 2 * c(2 * t) - c(3 * t) + 6]]) / 8


def c0(t: float) -> np.ndarray:
    c, s = math.cos, math.sin
    return _m([[(-c(t) + 2 * c(2 * t) + c(3 * t) + 6) / s(t) ** 2, 4j * s(t) * c(t) / (c(t) - 1)],
               [2j * s(t) * c(t) / s(t / 2) ** 2, 4 * (c(t) + 1)]]) / 4


def c3(t: float) -> np.ndarray:
    c, s = math.cos, math.sin
    off = s(t / 2) ** 2 * s(t)
    return _m([[(c(2 * t) + 3) / 4, 1j * off], [-1j * off, (s(t) ** 2 + 2 * c(t)) / 2]]) \
        / cmath.sqrt(c(t))


def c4(t: float) -> np.ndarray:
    c, s = math.cos, math.sin
    off = s(t) + math.tan(t)
    return cmath.sqrt(-c(t)) / 2 * _m(
        [[-(c(2 * t) + 3) / (2 * c(t)), 1j * off],
         [-1j * off, (4 * c(t) + c(2 * t) - 1) / (2 * c(t))]])


def g_matrix(t: float) -> np.ndarray:
    """Explicit normalized action of the CZ gadget."""
    return _m([[1j * math.cos(t), math.sin(t)], [-math.sin(t), -1j * math.cos(t)]])


def g_identity_printed(t: float) -> np.ndarray:
    """The operator identity as printed: i Rx(theta) Z Rx(-theta)."""
    return 1j * rx(t) @ PAULI_Z @ rx(-t)


def g_identity_corrected(t: float) -> np.ndarray:
    return 1j * rx(-t) @ PAULI_Z @ rx(t)


def beta_c0(t: float) -> float:
    return 4 * (1 / math.sin(t) ** 4 - 1)


def beta_c1_printed(t: float) -> float:
    return 4 * math.cos(t) ** 2 / math.tan(t / 2) ** 4


def beta_c1_corrected(t: float) -> float:
    return -128 * math.cos(t) ** 2 * math.cos(t / 2) ** 4 / den1(t)


def beta_c2_printed(t: float) -> float:
    return 128 * math.cos(t) ** 2 * math.sin(t / 2) ** 4 / den2(t)


def beta_c2_corrected(t: float) -> float:
    return -beta_c2_printed(t)


def gamma_c0c1(t: float) -> float:
    return 32 * math.cos(t) ** 4 / math.tan(t / 2) ** 2 / den1(t)


def gamma_c0c2_printed(t: float) -> float:
    return 32 * math.cos(t) ** 4 / math.tan(t / 2) ** 2 / den2(t)


def gamma_c0c2_corrected(t: float) -> float:
    return 32 * math.cos(t) ** 4 * math.tan(t / 2) ** 2 / den2(t)


def jorgensen_a(t: float) -> float:
    """|beta(C1)| + |gamma(C1, C0)| on interval A."""
    c = math.cos(t)
    return 32 * (c**4 / math.tan(t / 2) ** 2 + 4 * c**2 * math.cos(t / 2) ** 4) / abs(den1(t))


def jorgensen_b(t: float) -> float:
    """|beta(C2)| + |gamma(C2, C0)| on interval B."""
    c = math.cos(t)
    return 32 * (c**4 * math.tan(t / 2) ** 2 + 4 * math.sin(t / 2) ** 4 * c**2) / abs(den2(t))


def tr_c3(t: float) -> complex:
    return (1 + math.cos(t)) / cmath.sqrt(math.cos(t))


def tr_c4(t: float) -> complex:
    return (math.cos(t) - 1) * cmath.sqrt(-math.cos(t)) / math.cos(t)


# name -> (printed form, corrected form or None when the printed one holds)
CZZ_FORMULAS = {
    "beta(C0)": (beta_c0, None),
    "beta(C1)": (beta_c1_printed, beta_c1_corrected),
    "beta(C2)": (beta_c2_printed, beta_c2_corrected),
    "gamma(C0,C1)": (gamma_c0c1, None),
    "gamma(C0,C2)": (gamma_c0c2_printed, gamma_c0c2_corrected),
    "jorgensen_A": (jorgensen_a, None),
    "jorgensen_B": (jorgensen_b, None),
    "tr(C3)": (tr_c3, None),
    "tr(C4)": (tr_c4, None),
}
