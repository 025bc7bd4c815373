"""Ground-state coupling constants and spin-1 operators.

Internal units everywhere: MHz for energies/h, gauss for magnetic fields,
V/m for electric fields, radians for angles.  The electric couplings are
stored in MHz/(V/m); 0.35 Hz cm/V = 3.5e-9 MHz/(V/m), 17 Hz cm/V =
1.7e-7 MHz/(V/m).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SQRT2 = np.sqrt(2.0)

# spin-1 operators, basis |+1>, |0>, |-1> (electron and nucleus share them)
SPIN_X = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / _SQRT2
SPIN_Y = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex) / _SQRT2
# diag(1, 0, -1); the 1/sqrt(2) prefactor sometimes printed on this matrix is
# incompatible with the 2.80 MHz/G Zeeman slope and with [Sx, Sy] = i Sz.
SPIN_Z = np.diag([1.0, 0.0, -1.0]).astype(complex)
IDENTITY_3 = np.eye(3, dtype=complex)

SPIN_X.setflags(write=False)
SPIN_Y.setflags(write=False)
SPIN_Z.setflags(write=False)
IDENTITY_3.setflags(write=False)


@dataclass(frozen=True)
class PhysicalConstants:
    """Ground-state spin Hamiltonian parameters for an NV- center with a 14N nucleus.

    Every value can be overridden (e.g. a temperature-shifted zero-field
    splitting); the defaults are the room-temperature literature values.
    """

    d_gs: float = 2870.0          # zero-field splitting, MHz
    gamma_nv: float = 2.80        # electron gyromagnetic ratio, MHz/G
    d_parallel: float = 3.5e-9    # axial Stark coupling, MHz/(V/m)
    d_transverse: float = 1.7e-7  # transverse Stark coupling, MHz/(V/m)
    a_parallel: float = -2.14     # axial hyperfine coupling, MHz
    a_transverse: float = -2.7    # transverse hyperfine coupling, MHz
    quadrupole: float = -4.95     # 14N nuclear quadrupole parameter, MHz
    gamma_n: float = 3.1e-4       # 14N nuclear gyromagnetic ratio, MHz/G

    def lambda_shift(self, b_perp: float) -> float:
        """Second-order transverse-Zeeman parameter (gamma*B_perp)^2 / (2 D_gs), MHz."""
        return (self.gamma_nv * b_perp) ** 2 / (2.0 * self.d_gs)


DEFAULT_CONSTANTS = PhysicalConstants()
