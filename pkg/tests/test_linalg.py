import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gadgetcert.errors import DimMismatch, NonFiniteValue, ZeroRoot
from gadgetcert.linalg import (
    DEFAULT_TOL, Tolerance, approx_eq, as_cmat, det, dagger, identity, inv2, mat_close,
    mat_mul, near_boundary, principal_root, sl2_scale, trace, up_to_sign,
)

from conftest import random_unitary


def test_tolerance_defaults_and_validation():
    assert (DEFAULT_TOL.eq_eps, DEFAULT_TOL.det_eps, DEFAULT_TOL.warn_band) == (1e-9, 1e-12, 1e-6)
    with pytest.raises(ValueError):
        Tolerance(eq_eps=1e-3, warn_band=1e-6)
    with pytest.raises(ValueError):
        Tolerance(det_eps=0)


def test_as_cmat_rejects_bad_shapes():
    with pytest.raises(DimMismatch):
        as_cmat(np.zeros((3, 3)))
    with pytest.raises(DimMismatch):
        as_cmat(np.zeros((2, 4)))
    with pytest.raises(NonFiniteValue):
        as_cmat([[1, np.nan], [0, 1]])


def test_mat_mul_dim_mismatch():
    with pytest.raises(DimMismatch):
        mat_mul(identity(2), identity(4))


def test_det_trace_basics():
    assert det(identity(4)) == pytest.approx(1)
    assert trace(identity(2)) == 2
    a = np.array([[1, 2], [3, 4]], dtype=complex)
    assert det(a) == pytest.approx(-2)
    assert np.allclose(inv2(a) @ a, identity(2))


def test_principal_root_branch():
    assert principal_root(1, 2) == pytest.approx(1)
    assert principal_root(-1, 2) == pytest.approx(1j)
    # a negative real with a signed-zero imaginary part stays on the Arg = pi branch
    assert principal_root(complex(-4, -0.0), 2) == pytest.approx(2j)
    assert principal_root(complex(-4, -1e-17), 2) == pytest.approx(2j)
    with pytest.raises(ZeroRoot):
        principal_root(1e-13, 2)


@settings(max_examples=200, deadline=None)
@given(st.floats(math.log(1e-12), math.log(1e3)), st.floats(-math.pi, math.pi),
       st.sampled_from([1, 2, 4, 8]))
def test_principal_root_power(logr, arg, n):
    z = cmath.rect(math.exp(logr), arg)
    r = principal_root(z, n)
    assert abs(r ** n - z) <= 10 * DEFAULT_TOL.eq_eps * max(1, abs(z))
    assert -math.pi / n - 1e-12 < cmath.phase(r) <= math.pi / n + 1e-12


def test_det_multiplicative(rng):
    for dim in (2, 4, 8, 16):
        for _ in range(10):
            a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            b = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            a /= abs(det(a)) ** (1 / dim)
            b /= abs(det(b)) ** (1 / dim)
            assert abs(det(a @ b) - det(a) * det(b)) <= 100 * DEFAULT_TOL.eq_eps


def test_trace_similarity_invariant(rng):
    for _ in range(50):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        w = random_unitary(rng, 4) + 0.3 * np.eye(4)
        assert abs(trace(w @ a @ np.linalg.inv(w)) - trace(a)) <= 100 * DEFAULT_TOL.eq_eps


def test_unitary_det_unit_modulus(rng):
    u = random_unitary(rng, 8) @ random_unitary(rng, 8)
    assert abs(abs(det(u)) - 1) < 1e-12
    assert np.allclose(dagger(u) @ u, identity(8))


def test_approx_eq_and_band():
    assert approx_eq(1, 1 + 1e-12j)[0]
    ok, d = approx_eq(0, 1)
    assert not ok and d == 1
    assert near_boundary(1e-7)
    assert not near_boundary(1e-10)
    assert not near_boundary(1e-5)


def test_mat_close_scaled_and_sign():
    a = np.array([[1e3, 0], [0, 1e-3]], dtype=complex)
    assert sl2_scale(a) == pytest.approx(1e6)
    ok, _ = mat_close(a, a + 1e-4)
    assert ok
    assert not mat_close(a, a + 1e-4, scale=1.0)[0]
    err, sign = up_to_sign(a, -a)
    assert err == 0 and sign == -1
