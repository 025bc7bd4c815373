"""Ground-state spin Hamiltonian of a single NV center and its eigensystem.

All matrices are expressed in the product basis |m_s, m_I> with
m_s, m_I ordered (+1, 0, -1); energies are in MHz (H/h).  Static B and E
are given in the NV body frame of one configuration.

Sign convention for the transverse Stark terms: the Hamiltonian used here is

    H_el/h = (D_gs + d_par Ez)(Sz^2 - 2/3) + gamma_nv B.S
             + d_perp Ex (Sx^2 - Sy^2) - d_perp Ey (Sx Sy + Sy Sx)

i.e. the transverse electric field enters with the opposite overall sign of
the form often printed for the body frame with +x pointing away from the
carbon atom.  With the frame matrices of :mod:`.geometry` this is the choice
that makes phi_E = atan2(Ey, Ex) the angle entering the polarization
selection rule (the low-frequency branch is dark for a microwave field
polarized along x when E points along +x), and that reproduces the measured
upshift of the NV branch relative to VN when E and B_perp are parallel.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_CONSTANTS, IDENTITY_3, SPIN_X, SPIN_Y, SPIN_Z, PhysicalConstants
from .errors import InvalidInputError, NumericError, ValidityRangeWarning
from .fields import FieldVector

B_VALIDITY_LIMIT = 100.0  # gauss; above this, transition strength no longer tracks contrast

_SX2_MINUS_SY2 = (SPIN_X @ SPIN_X - SPIN_Y @ SPIN_Y)
_SXSY_PLUS_SYSX = (SPIN_X @ SPIN_Y + SPIN_Y @ SPIN_X)
_SZ2_TRACELESS = (SPIN_Z @ SPIN_Z - (2.0 / 3.0) * IDENTITY_3)

# field-independent 9x9 blocks of the product space, precomputed once
ELECTRON_OPS = tuple(np.kron(s, IDENTITY_3) for s in (SPIN_X, SPIN_Y, SPIN_Z))
NUCLEAR_OPS = tuple(np.kron(IDENTITY_3, s) for s in (SPIN_X, SPIN_Y, SPIN_Z))
_EL_ZFS9 = np.kron(_SZ2_TRACELESS, IDENTITY_3)
_EL_EX9 = np.kron(_SX2_MINUS_SY2, IDENTITY_3)
_EL_EY9 = np.kron(_SXSY_PLUS_SYSX, IDENTITY_3)
_HF_PAR9 = np.kron(SPIN_Z, SPIN_Z)
_HF_PERP9 = np.kron(SPIN_X, SPIN_X) + np.kron(SPIN_Y, SPIN_Y)
_QUAD9 = np.kron(IDENTITY_3, _SZ2_TRACELESS)
for _block in (ELECTRON_OPS + NUCLEAR_OPS
               + (_EL_ZFS9, _EL_EX9, _EL_EY9, _HF_PAR9, _HF_PERP9, _QUAD9)):
    _block.setflags(write=False)


@dataclass(frozen=True)
class SpinSystem:
    """9x9 total Hamiltonian (MHz) plus the inputs that built it."""

    h: np.ndarray
    b_frame: FieldVector
    e_frame: FieldVector
    constants: PhysicalConstants

    def __post_init__(self):
        self.h.setflags(write=False)


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenfrequencies (MHz) and orthonormal eigenvectors (columns)."""

    frequencies: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        self.frequencies.setflags(write=False)
        self.vectors.setflags(write=False)


def _check_static(v: FieldVector, name: str, limit: float | None = None) -> np.ndarray:
    if v.is_complex and np.any(v.components.imag != 0.0):
        raise InvalidInputError(f"{name} must be real (complex vectors are for MW drives)")
    arr = v.components.real.astype(float)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite components")
    if limit is not None and np.linalg.norm(arr) > limit:
        warnings.warn(
            f"|B| = {np.linalg.norm(arr):.1f} G exceeds the {limit:.0f} G range in which "
            "transition strength is proportional to ODMR contrast (excited-state mixing "
            "is not modeled)",
            ValidityRangeWarning,
            stacklevel=3,
        )
    return arr


def build_electronic(b_frame: FieldVector, e_frame: FieldVector,
                     constants: PhysicalConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    """Electronic spin-1 Hamiltonian (3x3, MHz) for body-frame static fields."""
    b = _check_static(b_frame, "B", B_VALIDITY_LIMIT)
    e = _check_static(e_frame, "E")
    c = constants
    h = (c.d_gs + c.d_parallel * e[2]) * _SZ2_TRACELESS
    h = h + c.gamma_nv * (b[0] * SPIN_X + b[1] * SPIN_Y + b[2] * SPIN_Z)
    h = h + c.d_transverse * (e[0] * _SX2_MINUS_SY2 - e[1] * _SXSY_PLUS_SYSX)
    return h


def build_total(b_frame: FieldVector, e_frame: FieldVector,
                constants: PhysicalConstants = DEFAULT_CONSTANTS) -> SpinSystem:
    """Full electron + 14N nuclear Hamiltonian (9x9, MHz) for body-frame fields."""
    b = _check_static(b_frame, "B", B_VALIDITY_LIMIT)
    e = _check_static(e_frame, "E")
    c = constants
    h = (c.d_gs + c.d_parallel * e[2]) * _EL_ZFS9
    h = h + c.gamma_nv * (b[0] * ELECTRON_OPS[0] + b[1] * ELECTRON_OPS[1]
                          + b[2] * ELECTRON_OPS[2])
    h += c.d_transverse * (e[0] * _EL_EX9 - e[1] * _EL_EY9)
    h += c.a_parallel * _HF_PAR9 + c.a_transverse * _HF_PERP9 + c.quadrupole * _QUAD9
    h += c.gamma_n * (b[0] * NUCLEAR_OPS[0] + b[1] * NUCLEAR_OPS[1] + b[2] * NUCLEAR_OPS[2])
    return SpinSystem(h=h, b_frame=b_frame, e_frame=e_frame, constants=constants)


def diagonalize(system: SpinSystem) -> EigenSystem:
    """Eigenfrequencies (ascending) and phase-fixed orthonormal eigenvectors.

    Each eigenvector is rescaled so its largest-magnitude component is real
    and positive, which makes repeated runs bit-identical.
    """
    h = system.h
    if np.abs(h - h.conj().T).max() > 1e-9:
        raise InvalidInputError("Hamiltonian is not Hermitian")
    try:
        freqs, vecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed to converge on\n{h}") from exc
    vecs = vecs.copy()
    for j in range(vecs.shape[1]):
        i = int(np.argmax(np.abs(vecs[:, j])))
        pivot = vecs[i, j]
        mag = abs(pivot)
        if mag > 0.0:
            vecs[:, j] *= pivot.conjugate() / mag
    return EigenSystem(frequencies=freqs, vectors=vecs)


def basis_index(m_s: int, m_i: int) -> int:
    """Index of |m_s, m_I> in the 9-dimensional product basis."""
    if m_s not in (-1, 0, 1) or m_i not in (-1, 0, 1):
        raise InvalidInputError(f"spin projections must be in (-1, 0, 1), got {m_s}, {m_i}")
    return 3 * (1 - m_s) + (1 - m_i)
