import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.linalg import solve_banded

from fracladder import (
    DiffusionProfile,
    DiscreteDiffusionSystem,
    LadderSpec,
    SingularAtFrequency,
    ValidationError,
    assemble,
    input_admittance,
    ladder_from_profile,
    solve,
    transfer_cf,
    transfer_recursive,
)
from fracladder.pde import coupling_weights, fluxes, row_residuals, thomas_solve, tridiagonal_rows

from .conftest import omegas, profiles, rel_err

FLAT = DiffusionProfile(1, 1, 0, 0, 1)


def test_constant_stencil():
    system = assemble(FLAT, 4)
    lower, diag, upper, rhs = tridiagonal_rows(system, 0.5)
    # interior rows: s U(k) = -U(k+1) + 2 U(k) - U(k-1)
    np.testing.assert_array_equal(diag, [2.5, 2.5, 2.5, 1.5])
    np.testing.assert_array_equal(lower[1:], [-1, -1, -1])
    np.testing.assert_array_equal(upper[:-1], [-1, -1, -1])
    np.testing.assert_array_equal(rhs, [1, 0, 0, 0])


def test_single_node_admittance():
    system = assemble(FLAT, 1)
    assert input_admittance(system, 1) == pytest.approx(0.5, rel=1e-15)
    assert input_admittance(system, 1) == pytest.approx(transfer_recursive(LadderSpec((1,), (1,)), 1))


def test_two_node_hand_solution():
    # rows (s + 2) U1 - U2 = U0 and (s + 1) U2 - U1 = 0 with s = 1, U0 = 1
    u = solve(assemble(FLAT, 2), 1.0)
    np.testing.assert_allclose(u, [1.0, 0.4, 0.2], rtol=1e-15)


def test_zero_boundary_gives_zero_solution():
    u = solve(assemble(FLAT, 5, 0.0), 1j)
    assert np.all(u == 0)
    with pytest.raises(ValidationError):
        input_admittance(assemble(FLAT, 5, 0.0), 1j)


@given(profiles(), st.integers(1, 64), omegas, st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3))
def test_linearity(prof, n, w, alpha):
    u1 = solve(assemble(prof, n, 1.0), 1j * w)
    ua = solve(assemble(prof, n, alpha), 1j * w)
    scale = np.abs(alpha * u1) + 1e-300
    assert np.all(np.abs(ua - alpha * u1) <= 1e-13 * scale)


@given(profiles(), st.integers(1, 64), omegas)
def test_conjugate_symmetry(prof, n, w):
    system = assemble(prof, n)
    a = input_admittance(system, -1j * w)
    b = input_admittance(system, 1j * w).conjugate()
    assert rel_err(a, b) <= 1e-13


@given(profiles(), st.integers(1, 64), omegas)
def test_oracle_equivalence(prof, n, w):
    lad = ladder_from_profile(prof, n)
    s = 1j * w / (lad.resistances[0] * lad.capacitances[0])
    assert rel_err(input_admittance(assemble(prof, n), s), transfer_cf(lad, s)) <= 1e-10


@given(profiles(), st.integers(1, 64), omegas)
def test_row_residuals(prof, n, w):
    system = assemble(prof, n)
    u = solve(system, 1j * w)
    assert np.max(row_residuals(system, 1j * w, u)) <= 1e-12


@given(st.integers(2, 40), st.floats(1e-2, 1e2))
def test_solve_matches_banded_lapack(n, w):
    # moderate uniform profile keeps the reference solver well conditioned
    system = assemble(DiffusionProfile(1.0, 2.0, 0.1, -0.2, 0.5), n)
    lower, diag, upper, rhs = tridiagonal_rows(system, 1j * w)
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = upper[:-1]
    ab[1] = diag
    ab[2, :-1] = lower[1:]
    ref = solve_banded((1, 1), ab, rhs)
    np.testing.assert_allclose(solve(system, 1j * w)[1:], ref, rtol=1e-10, atol=1e-300)
    np.testing.assert_allclose(thomas_solve(lower, diag, upper, rhs), ref, rtol=1e-10, atol=1e-300)


def test_coupling_weights_reproduce_element_values():
    prof = DiffusionProfile(2.0, 0.5, 0.3, -0.4, 0.25)
    n = 6
    system = assemble(prof, n)
    lad = ladder_from_profile(prof, n)
    w_back, w_fwd = coupling_weights(system)
    r, c = lad.resistances, lad.capacitances
    for k in range(n):
        # w_back = 1 / (R(k+1) C(k+1)), w_fwd = 1 / (R(k+2) C(k+1))
        assert w_back[k] == pytest.approx(1 / (r[k] * c[k]), rel=1e-13)
        if k + 1 < n:
            assert w_fwd[k] == pytest.approx(1 / (r[k + 1] * c[k]), rel=1e-13)
    assert w_fwd[-1] == 0


def test_flux_sign_convention():
    system = assemble(FLAT, 3)
    u = solve(system, 1.0)
    phi = fluxes(system, u)
    # phi(0) = beta(0) / h (U1 - U0) is positive for current flowing into the network
    assert phi[0].real > 0
    assert phi[0] == pytest.approx(input_admittance(system, 1.0) * u[0], rel=1e-14)


def test_singular_frequency_reported():
    # s = -1 makes the last pivot w_back + s = 0 on the single-node system
    with pytest.raises(SingularAtFrequency) as info:
        solve(assemble(FLAT, 1), -1.0)
    assert info.value.pivot == 1
    lower, diag, upper, rhs = tridiagonal_rows(assemble(FLAT, 2), 1.0)
    with pytest.raises(SingularAtFrequency) as info:
        thomas_solve(lower, np.array([0, 2], dtype=complex), upper, rhs)
    assert info.value.pivot == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n_nodes=0, h=1, beta_at=(), gamma_at=()),
        dict(n_nodes=2, h=1, beta_at=(-1,), gamma_at=(-1, -1)),
        dict(n_nodes=1, h=1, beta_at=(1,), gamma_at=(-1,)),
        dict(n_nodes=1, h=0, beta_at=(-1,), gamma_at=(-1,)),
        dict(n_nodes=1, h=1, beta_at=(-1,), gamma_at=(math.nan,)),
    ],
)
def test_system_validation(kwargs):
    with pytest.raises(ValidationError):
        DiscreteDiffusionSystem(**kwargs)


def test_assemble_accepts_general_profiles():
    class Linear:
        h = 0.1

        def beta(self, z):
            return -(1 + z)

        def gamma(self, z):
            return -2.0

    system = assemble(Linear(), 3)
    assert system.beta_at == pytest.approx((-1.0, -1.1, -1.2))
    assert system.gamma_at == (-2.0, -2.0, -2.0)
