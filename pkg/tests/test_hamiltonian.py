import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from nvodmr import (DEFAULT_CONSTANTS, FieldVector, InvalidInputError, ValidityRangeWarning,
                    basis_index, build_electronic, build_total, diagonalize)
from nvodmr.constants import SPIN_X, SPIN_Y, SPIN_Z

from oracle import brute_hamiltonian

D = DEFAULT_CONSTANTS.d_gs


def vec(x, y, z):
    return FieldVector.cartesian(x, y, z)


ZERO = vec(0, 0, 0)


def test_spin_commutator():
    assert np.abs(SPIN_X @ SPIN_Y - SPIN_Y @ SPIN_X - 1j * SPIN_Z).max() < 1e-12


def test_zero_field_electronic_eigenvalues():
    w = np.linalg.eigvalsh(build_electronic(ZERO, ZERO))
    assert_allclose(w, [-2 * D / 3, D / 3, D / 3], atol=1e-9)
    # upper level doubly degenerate at zero field
    assert abs(w[2] - w[1]) < 1e-9


def test_axial_zeeman_splitting():
    w = np.linalg.eigvalsh(build_electronic(vec(0, 0, 1.8), ZERO))
    transitions = w[1:] - w[0]
    assert_allclose(transitions, [D - 5.04, D + 5.04], atol=1e-9)


def test_transverse_stark_doublet():
    w = np.linalg.eigvalsh(build_electronic(ZERO, vec(4e7, 0, 0)))
    assert_allclose(w[2] - w[1], 13.6, atol=1e-9)


def test_total_diagonal_element_and_trace():
    system = build_total(ZERO, ZERO)
    idx = basis_index(+1, +1)
    assert_allclose(system.h[idx, idx].real, D / 3 - 2.14 - 4.95 / 3, atol=1e-9)
    assert abs(np.trace(system.h)) < 1e-9


def test_zero_field_triplet_transitions():
    system = build_total(ZERO, ZERO)
    w = np.linalg.eigvalsh(system.h)
    # transitions from the three m_s=0 levels to the m_s=+-1 ones cluster at
    # D and D +- |A_par| (kHz-level second-order hyperfine shifts)
    transitions = sorted(w[3:] - np.repeat(w[:3], 2))
    clusters = np.unique(np.round(transitions, 1))
    assert_allclose(clusters, [D - 2.14, D, D + 2.14], atol=0.05)


def test_matches_brute_force_oracle():
    rng = np.random.default_rng(7)
    for _ in range(25):
        b = rng.uniform(-60, 60, 3)
        e = rng.uniform(-5e7, 5e7, 3)
        h = build_total(vec(*b), vec(*e)).h
        assert np.abs(h - brute_hamiltonian(b, e)).max() < 1e-9


def test_hermiticity_and_trace_random_scenes():
    rng = np.random.default_rng(12345)
    for _ in range(1000):
        b = rng.uniform(-1, 1, 3)
        b *= rng.uniform(0, 100) / max(np.linalg.norm(b), 1e-12)
        e = rng.uniform(-1, 1, 3)
        e *= rng.uniform(0, 1e8) / max(np.linalg.norm(e), 1e-12)
        h = build_total(vec(*b), vec(*e)).h
        assert np.abs(h - h.conj().T).max() < 1e-12
        assert abs(np.trace(h)) < 1e-9


def test_eigen_reconstruction_random():
    rng = np.random.default_rng(99)
    for _ in range(120):
        a = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        h = (a + a.conj().T) * 50.0
        system = build_total(ZERO, ZERO)
        object.__setattr__(system, "h", h)
        eig = diagonalize(system)
        rebuilt = eig.vectors @ np.diag(eig.frequencies) @ eig.vectors.conj().T
        assert np.abs(rebuilt - h).max() < 1e-9
        gram = eig.vectors.conj().T @ eig.vectors
        assert np.abs(gram - np.eye(9)).max() < 1e-10


def test_diagonalize_zero_matrix_gives_standard_basis():
    system = build_total(ZERO, ZERO)
    object.__setattr__(system, "h", np.zeros((9, 9), dtype=complex))
    eig = diagonalize(system)
    assert_allclose(eig.frequencies, np.zeros(9), atol=0)
    assert_allclose(eig.vectors, np.eye(9), atol=0)


def test_eigenvector_phase_convention_deterministic():
    system = build_total(vec(3, 4, 5), vec(1e6, -2e6, 3e6))
    first = diagonalize(system)
    second = diagonalize(build_total(vec(3, 4, 5), vec(1e6, -2e6, 3e6)))
    assert np.array_equal(first.vectors, second.vectors)
    for j in range(9):
        pivot = first.vectors[np.argmax(np.abs(first.vectors[:, j])), j]
        assert pivot.real > 0 and abs(pivot.imag) < 1e-12


def test_axial_field_matches_diagonal_up_to_hyperfine_mixing():
    # with B along z the 9x9 is diagonal except for the transverse hyperfine
    # coupling, whose second-order shifts are below ~2*A_perp^2/D per level
    system = build_total(vec(0, 0, 10.0), ZERO)
    w = np.linalg.eigvalsh(system.h)
    diag = np.sort(np.diag(system.h).real)
    bound = 2 * DEFAULT_CONSTANTS.a_transverse ** 2 / D * 1.1
    assert np.abs(w - diag).max() < bound


def test_axial_linearity_slope():
    bz = np.arange(0.0, 101.0, 10.0)
    splittings = []
    for b in bz:
        w = np.linalg.eigvalsh(build_electronic(vec(0, 0, b), ZERO))
        splittings.append(w[2] - w[1])
    slope = np.polyfit(bz, splittings, 1)[0]
    assert abs(slope - 2 * DEFAULT_CONSTANTS.gamma_nv) / (2 * DEFAULT_CONSTANTS.gamma_nv) < 1e-9


def test_transverse_b_second_order_mean_shift():
    # mean of the two m_I=0 electronic transitions sits 3*lam above D_gs
    # (the |0> level is pushed down 2*lam, |+-1> up by lam)
    for b_perp in (20.0, 50.0):
        w = np.linalg.eigvalsh(build_electronic(vec(b_perp, 0, 0), ZERO))
        mean = (w[1] + w[2]) / 2 - w[0] - D
        lam = DEFAULT_CONSTANTS.lambda_shift(b_perp)
        tol = (DEFAULT_CONSTANTS.gamma_nv * b_perp) ** 4 / D ** 3 * 1.5
        assert abs(mean - 3 * lam) < tol


def test_complex_static_field_rejected():
    with pytest.raises(InvalidInputError):
        build_electronic(FieldVector.cartesian(1j, 0, 0), ZERO)


def test_nonfinite_field_rejected():
    with pytest.raises(InvalidInputError):
        build_total(vec(np.nan, 0, 0), ZERO)


def test_high_field_warns_not_raises():
    with pytest.warns(ValidityRangeWarning):
        build_total(vec(0, 0, 150.0), ZERO)


@settings(max_examples=60, deadline=None)
@given(st.floats(-55, 55), st.floats(-55, 55), st.floats(-55, 55),
       st.floats(-5e7, 5e7), st.floats(-5e7, 5e7), st.floats(-5e7, 5e7))
def test_hamiltonian_linearity_in_fields(bx, by, bz, ex, ey, ez):
    h_b = build_total(vec(bx, by, bz), ZERO).h
    h_e = build_total(ZERO, vec(ex, ey, ez)).h
    h_zero = build_total(ZERO, ZERO).h
    h_both = build_total(vec(bx, by, bz), vec(ex, ey, ez)).h
    assert np.abs(h_both - (h_b + h_e - h_zero)).max() < 1e-8
