"""Small dense complex linear algebra with tolerance-aware predicates.

Matrices are plain ``numpy`` complex128 arrays of shape ``(2**k, 2**k)``.
Scalars are Python ``complex``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, NonFiniteValue, ZeroRoot


@dataclass(frozen=True)
class Tolerance:
    """Thresholds shared by every numeric predicate.

    ``eq_eps`` decides equality, ``det_eps`` decides singularity and
    ``warn_band`` is the width around a threshold inside which a decision is
    reported as a near-boundary warning.
    """

    eq_eps: float = 1e-9
    det_eps: float = 1e-12
    warn_band: float = 1e-6

    def __post_init__(self):
        if not (0 < self.eq_eps < self.warn_band):
            raise ValueError("need 0 < eq_eps < warn_band")
        if not self.det_eps > 0:
            raise ValueError("need det_eps > 0")


DEFAULT_TOL = Tolerance()

# imaginary parts below this (relative) size are treated as rounding noise
_SNAP = 1e-14


def as_cmat(a) -> np.ndarray:
    """Coerce ``a`` to a square complex matrix whose dimension is a power of 2."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n < 1 or n & (n - 1):
        raise DimMismatch(f"dimension {n} is not a power of 2")
    if not np.all(np.isfinite(m)):
        raise NonFiniteValue("matrix has non-finite entries")
    return m


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape:
        raise DimMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def det(a: np.ndarray) -> complex:
    """Determinant; the 2x2 case uses the cofactor formula directly."""
    if a.shape == (2, 2):
        return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    # LAPACK LU with partial pivoting
    return complex(np.linalg.det(a))


def inv2(a: np.ndarray) -> np.ndarray:
    """Explicit inverse of a 2x2 matrix via the adjugate."""
    if a.shape != (2, 2):
        raise DimMismatch(f"inv2 needs a 2x2 matrix, got {a.shape}")
    d = det(a)
    if d == 0:
        raise ZeroDivisionError("singular 2x2 matrix")
    adj = np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]], dtype=np.complex128)
    return adj / d


def trace(a: np.ndarray) -> complex:
    return complex(np.trace(a))


def principal_root(z: complex, n: int, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Principal n-th root with Arg taken in (-pi, pi].

    Values on the negative real axis (including a signed-zero or rounding-level
    imaginary part) are assigned Arg = pi, so the branch does not flip with the
    sign of a vanishing imaginary part.
    """
    z = complex(z)
    if n < 1:
        raise ValueError("root order must be positive")
    r = abs(z)
    if r <= tol.det_eps:
        raise ZeroRoot(f"|z| = {r:.3e} is within det_eps of 0")
    arg = cmath.phase(z)
    if z.real < 0 and abs(z.imag) <= _SNAP * max(r, 1.0):
        arg = math.pi
    return r ** (1.0 / n) * cmath.exp(1j * arg / n)


def approx_eq(a: complex, b: complex, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Return ``(|a - b| <= eq_eps, |a - b|)``."""
    d = abs(complex(a) - complex(b))
    return d <= tol.eq_eps, d


def near_boundary(distance: float, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when a distance falls in the warning band ``(eq_eps, warn_band]``."""
    return tol.eq_eps < distance <= tol.warn_band


def max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def sl2_scale(*mats: np.ndarray) -> float:
    """Error scale for comparisons between unit-determinant matrices.

    A normalized action with large entries is obtained by dividing a nearly
    singular raw action by a tiny determinant, so its absolute rounding error
    grows with the square of its entry size.
    """
    m = max((max_abs(x) for x in mats), default=0.0)
    return max(1.0, m) ** 2


def mat_close(a: np.ndarray, b: np.ndarray, tol: Tolerance = DEFAULT_TOL,
              scale: float | None = None) -> tuple[bool, float]:
    """Entry-wise closeness, tolerance scaled by ``sl2_scale`` unless given."""
    if a.shape != b.shape:
        return False, math.inf
    err = max_abs(a - b)
    s = sl2_scale(a, b) if scale is None else scale
    return err <= tol.eq_eps * s, err


def is_unitary(a: np.ndarray, eps: float) -> bool:
    return max_abs(dagger(a) @ a - identity(a.shape[0])) <= eps


def up_to_sign(a: np.ndarray, b: np.ndarray) -> tuple[float, int]:
    """Smallest of ``max|a - b|`` and ``max|a + b|`` with the matching sign."""
    plus = max_abs(a - b)
    minus = max_abs(a + b)
    return (plus, 1) if plus <= minus else (minus, -1)
