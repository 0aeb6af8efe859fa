import time

import numpy as np
import pytest

from exbraid.braid import reference_spectrum, same_up_to_scale, sigma_spectrum
from exbraid.category import CategorySpec, qpower
from exbraid.matrixrep import (
    CycloMatrix,
    SpectrumMismatch,
    braid_relation_holds,
    build_AB,
    default_jmax,
    escalate,
    proportional_power_check,
)
from exbraid.rootdata import named_weight


@pytest.mark.parametrize("ell", range(18, 37))
def test_braid_relation_regression_range(ell):
    A, B = build_AB(ell)
    assert braid_relation_holds(A, B)


@pytest.mark.parametrize("ell", [18, 20, 24, 30])
def test_alternate_sign_entry_breaks_braid_relation(ell):
    A, B = build_AB(ell, alternate_sign=True)
    assert not braid_relation_holds(A, B)


def test_identity_examples():
    I = CycloMatrix.identity(4, 48)
    assert braid_relation_holds(I, I)
    assert proportional_power_check(I, 5) == 1


def test_matrix_entries_and_spectra():
    A, B = build_AB(24)
    assert A[0, 3] == -1
    q = qpower(24, 1)
    assert A[1, 2] == -(q ** 4 + 1) / q ** 10
    assert same_up_to_scale(A.diagonal(), reference_spectrum("G2-l1-rescaled", 24))
    assert sorted(map(hash, A.diagonal())) == sorted(map(hash, B.diagonal()))


@pytest.mark.parametrize("ell", [18, 20, 21, 24, 30])
def test_diagonal_matches_computed_g2_spectrum(ell):
    A, _ = build_AB(ell)
    s = sigma_spectrum(CategorySpec("G2", ell), named_weight("G2", "l1"))
    assert same_up_to_scale(A.diagonal(), s)


@pytest.mark.parametrize("ell", [20, 24])
def test_no_scalar_power(ell):
    start = time.perf_counter()
    A, B = build_AB(ell)
    C = A @ B.inverse()
    assert proportional_power_check(C, 24) is None
    assert time.perf_counter() - start < 1.0
    assert C.scalar_value() is None
    assert C.determinant().root_of_unity_order() is not None


def numeric_first_scalar_power(M, jmax, tol=1e-9):
    P = np.eye(M.shape[0], dtype=complex)
    for j in range(1, jmax + 1):
        P = P @ M
        c = P[0, 0]
        if np.allclose(P, c * np.eye(M.shape[0]), atol=tol):
            return j
    return None


@pytest.mark.parametrize("ell", [18, 20, 22, 24, 27, 36])
def test_power_check_agrees_with_float_oracle(ell):
    A, B = build_AB(ell)
    C = A @ B.inverse()
    Cn = np.array(C.to_complex())
    assert proportional_power_check(C, 24) == numeric_first_scalar_power(Cn, 24)
    An, Bn = np.array(A.to_complex()), np.array(B.to_complex())
    assert np.allclose(An @ Bn @ An, Bn @ An @ Bn, atol=1e-9)


def test_power_check_finds_scalar_powers():
    z = qpower(6, 1)  # primitive 12th root of unity
    D = CycloMatrix([[z, 0], [0, -z]])
    assert proportional_power_check(D, 10) == 2
    A, B = build_AB(24)
    assert (A @ B @ A) @ (A @ B @ A) == (A @ B) @ (A @ B) @ (A @ B)
    Z = (A @ B) @ (A @ B) @ (A @ B)
    assert Z.scalar_value() is not None


def test_inverse_and_determinant():
    A, B = build_AB(20)
    I = CycloMatrix.identity(4, A.conductor)
    assert A @ A.inverse() == I and B.inverse() @ B == I
    dA = A.determinant()
    prod = A.diagonal()[0] * A.diagonal()[1] * A.diagonal()[2] * A.diagonal()[3]
    assert dA == prod


def test_escalate_certificates():
    for ell in (20, 24):
        cert = escalate(ell)
        assert cert.infinite and cert.jmax == default_jmax(ell) == 24
        assert cert.conductor == 2 * ell
    assert escalate(36).jmax == 36
    f4 = sigma_spectrum(CategorySpec("F4", 24), named_weight("F4", "l4"))
    cert = escalate(24, spectrum=f4)
    assert cert.matched_spectrum
    f4_22 = sigma_spectrum(CategorySpec("F4", 22), named_weight("F4", "l1"))
    with pytest.raises(SpectrumMismatch):
        escalate(22, spectrum=f4_22)
