import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_density
from torusq.kinematics import (
    DimensionError,
    TorusSpace,
    build_space,
    chord_transform,
    coherent_state,
    coherent_states,
    fourier_matrix,
    inverse_chord_transform,
    parity,
    shift_u,
    shift_v,
    translation,
)

CHIS = (0.0, 0.5)


def mpow(A, n):
    return np.linalg.matrix_power(A, n)


# --- spaces ---------------------------------------------------------------

def test_space_half_integer_angles():
    s = build_space(100, 0.5, 0.5)
    assert s.hbar == pytest.approx(1 / (200 * math.pi), rel=1e-15)
    assert s.q[0] == pytest.approx(0.005, abs=1e-15)


def test_space_zero_angles():
    s = build_space(100)
    assert s.q[0] == 0.0 and s.p[0] == 0.0


def test_space_two_points():
    assert build_space(2).q.tolist() == [0.0, 0.5]


@given(st.integers(1, 500))
def test_hbar_matches_dimension(N):
    assert build_space(N).hbar == 1.0 / (2.0 * math.pi * N)


@pytest.mark.parametrize("N", [0, -3, 2.5, "8"])
def test_space_rejects_bad_dimension(N):
    with pytest.raises(DimensionError):
        TorusSpace(N)


@pytest.mark.parametrize("chi", [-0.1, 1.0, 1.5])
def test_space_rejects_floquet_angle_out_of_range(chi):
    with pytest.raises(ValueError):
        build_space(4, chi, 0.0)


# --- Fourier matrix ------------------------------------------------------

def test_fourier_two_by_two():
    F = fourier_matrix(build_space(2))
    np.testing.assert_allclose(F, np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-15)


def test_fourier_two_by_two_half_angles():
    F = fourier_matrix(build_space(2, 0.5, 0.5))
    # entry [k, j] = exp[-pi i (j + 1/2)(k + 1/2)] / sqrt 2
    expected = np.array([[np.exp(-1j * math.pi * (j + 0.5) * (k + 0.5)) for j in range(2)] for k in range(2)])
    expected /= math.sqrt(2)
    np.testing.assert_allclose(F, expected, atol=1e-15)
    assert np.abs(F.conj().T @ F - np.eye(2)).max() < 1e-12


@pytest.mark.parametrize("chi", CHIS)
def test_fourier_unitary_up_to_64(chi):
    for N in range(1, 65):
        F = fourier_matrix(build_space(N, chi, chi))
        assert np.abs(F.conj().T @ F - np.eye(N)).max() < 1e-12


@pytest.mark.parametrize("chi", CHIS)
@pytest.mark.parametrize("N", [5, 8, 16])
def test_shifts_are_diagonal_in_their_bases(N, chi):
    s = build_space(N, chi, chi)
    F = fourier_matrix(s)
    V, U = shift_v(s), shift_u(s)
    Umom = F @ U @ F.conj().T
    assert np.abs(V - np.diag(np.diag(V))).max() < 1e-12
    assert np.abs(Umom - np.diag(np.diag(Umom))).max() < 1e-12
    np.testing.assert_allclose(np.diag(Umom), np.exp(-2j * np.pi * s.p), atol=1e-12)


@pytest.mark.parametrize("chi", CHIS)
def test_shift_powers_are_floquet_phases(chi):
    for N in range(1, 17):
        s = build_space(N, chi, chi)
        np.testing.assert_allclose(mpow(shift_u(s), N), np.exp(-2j * np.pi * chi) * np.eye(N), atol=1e-12)
        np.testing.assert_allclose(mpow(shift_v(s), N), np.exp(-2j * np.pi * chi) * np.eye(N), atol=1e-12)


def test_shift_u_moves_position_forward():
    s = build_space(5)
    e = np.eye(5)
    np.testing.assert_allclose(shift_u(s) @ e[:, 2], e[:, 3])


# --- translations --------------------------------------------------------

@pytest.mark.parametrize("chi", CHIS)
def test_translation_zero_is_scaled_identity(chi):
    N = 7
    np.testing.assert_allclose(translation(build_space(N, chi, chi), 0, 0), np.eye(N) / math.sqrt(N))


@pytest.mark.parametrize("chi", CHIS)
def test_commutation_phase_entrywise_n6(chi):
    s = build_space(6, chi, chi)
    U, V = shift_u(s), shift_v(s)
    for j in range(6):
        for k in range(6):
            lhs = mpow(U, j) @ mpow(V, k)
            rhs = mpow(V, k) @ mpow(U, j) * np.exp(2j * np.pi * j * k / 6)
            assert np.abs(lhs - rhs).max() < 1e-12


@pytest.mark.parametrize("chi", CHIS)
def test_translations_orthonormal_n8(chi):
    s = build_space(8, chi, chi)
    basis = np.array([translation(s, j, k).ravel() for j in range(8) for k in range(8)])
    gram = basis.conj() @ basis.T
    assert np.abs(gram - np.eye(64)).max() < 1e-12


@pytest.mark.parametrize("chi", CHIS)
def test_translation_matches_shift_product(chi):
    N = 6
    s = build_space(N, chi, chi)
    U, V = shift_u(s), shift_v(s)
    for j in range(N):
        for k in range(N):
            expected = np.exp(1j * np.pi * j * k / N) * mpow(V, j) @ mpow(U, k) / math.sqrt(N)
            assert np.abs(translation(s, j, k) - expected).max() < 1e-12


@pytest.mark.parametrize("chi", CHIS)
def test_translation_adjoint_negates_indices(chi):
    N = 6
    s = build_space(N, chi, chi)
    for j in range(-N, N):
        for k in range(-N, N):
            assert np.abs(translation(s, j, k).conj().T - translation(s, -j, -k)).max() < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 64), st.integers(-200, 200), st.integers(-200, 200), st.sampled_from(CHIS))
def test_unitary_translation(N, j, k, chi):
    s = build_space(N, chi, chi)
    T = translation(s, j, k)
    assert np.abs(T.conj().T @ T - np.eye(N) / N).max() < 1e-12
    Tu = translation(s, j, k, unitary=True)
    assert np.abs(Tu.conj().T @ Tu - np.eye(N)).max() < 1e-12


def test_translation_moves_coherent_state():
    # T_{j,k} moves a state by k/N in q and by -j/N in p
    N = 40
    s = build_space(N)
    z = coherent_state(s, 0.3, 0.6)
    moved = translation(s, 2, 5, unitary=True) @ z
    assert abs(np.vdot(coherent_state(s, 0.3 + 5 / N, 0.6 - 2 / N), moved)) == pytest.approx(1, abs=1e-10)


# --- parity --------------------------------------------------------------

def test_parity_half_angle_convention():
    N = 6
    R = parity(build_space(N, 0.5, 0.5))
    for j in range(N):
        for k in range(N):
            assert R[j, k] == (1.0 if (j + k + 1) % N == 0 else 0.0)


def test_parity_rejects_generic_angle():
    with pytest.raises(ValueError):
        parity(build_space(4, 0.25, 0.0))


# --- coherent states -----------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(
    st.integers(2, 128),
    st.floats(-3, 3, allow_nan=False),
    st.floats(-3, 3, allow_nan=False),
    st.sampled_from(CHIS),
)
def test_coherent_state_normalized(N, q0, p0, chi):
    z = coherent_state(build_space(N, chi, chi), q0, p0)
    assert abs(np.linalg.norm(z) - 1) < 1e-12


def test_distant_coherent_states_are_orthogonal():
    s = build_space(100)
    assert abs(np.vdot(coherent_state(s, 0.35, 0.35), coherent_state(s, 0.65, 0.65))) < 1e-10


@pytest.mark.parametrize("chi", CHIS)
def test_coherent_state_is_periodic(chi):
    s = build_space(30, chi, chi)
    z = coherent_state(s, 0.2, 0.7)
    for shift in [(1, 0), (0, 1), (-2, 3)]:
        w = coherent_state(s, 0.2 + shift[0], 0.7 + shift[1])
        assert abs(abs(np.vdot(z, w)) - 1) < 1e-10


def test_coherent_image_truncation():
    s = build_space(8, 0.5, 0.5)
    a = coherent_state(s, 0.41, 0.13, images=3)
    b = coherent_state(s, 0.41, 0.13, images=5)
    assert np.abs(a - b).max() < 1e-12


def test_batched_coherent_states_match_single():
    s = build_space(24, 0.5, 0.5)
    q0, p0 = [0.1, 0.5, 0.93], [0.7, 0.25, 0.0]
    Z = coherent_states(s, q0, p0)
    for i in range(3):
        np.testing.assert_allclose(Z[:, i], coherent_state(s, q0[i], p0[i]), atol=1e-14)


# --- chord transform -----------------------------------------------------

@pytest.mark.parametrize("chi", CHIS)
@pytest.mark.parametrize("N", [1, 2, 5, 8])
def test_chord_transform_matches_trace(rng, N, chi):
    s = build_space(N, chi, chi)
    rho = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    direct = np.array([[np.trace(translation(s, a, b).conj().T @ rho) for b in range(N)] for a in range(N)])
    np.testing.assert_allclose(chord_transform(rho, s), direct, atol=1e-12)


@pytest.mark.parametrize("chi", CHIS)
def test_chord_round_trip(rng, chi):
    s = build_space(33, chi, chi)
    rho = random_density(rng, 33)
    assert np.abs(inverse_chord_transform(chord_transform(rho, s), s) - rho).max() < 1e-13
