"""Microwave transition strengths and Lorentzian-broadened spectra.

The drive couples to both spins, H_int/h = gamma_nv B_mw.S + gamma_n B_mw.I,
and the strength of the |i> -> |f> line is |<f|H_int|i>|^2 with the complex
polarization vector inserted directly.  Each line is given the Lorentzian
profile  T * (delta^2/4) / ((nu - f0)^2 + delta^2/4)  of full width delta at
half maximum, and all lines of all requested defect configurations are
accumulated in a fixed order so reruns are bit-identical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .errors import InvalidInputError
from .fields import FieldVector
from .geometry import NVConfiguration, all_configurations, lab_to_nv
from .hamiltonian import ELECTRON_OPS, NUCLEAR_OPS, EigenSystem, build_total, diagonalize

# lines centered further than this many linewidths outside the grid are
# dropped; the truncation error per line is below delta^2/400 of its peak
LINE_WINDOW_LINEWIDTHS = 10.0

_PAIR_I, _PAIR_F = np.triu_indices(9, k=1)


class MWDrive:
    """Microwave polarization: linear, fixed complex vector, or unpolarized.

    Linear and complex drives hold a unit-normalized polarization vector
    (sum |c|^2 = 1); an unpolarized drive holds the unit normal of the
    rotation plane and is realized as the incoherent average over two
    orthogonal linear polarizations spanning that plane.
    """

    LINEAR = "linear"
    COMPLEX = "complex"
    UNPOLARIZED = "unpolarized"

    def __init__(self, mode: str, vector: FieldVector):
        if mode not in (self.LINEAR, self.COMPLEX, self.UNPOLARIZED):
            raise InvalidInputError(f"unknown MW mode {mode!r}")
        n = vector.magnitude
        if n == 0.0:
            raise InvalidInputError("MW vector must be non-zero")
        self.mode = mode
        self.vector = FieldVector(vector.components / n)

    @classmethod
    def linear(cls, theta: float, phi: float) -> "MWDrive":
        return cls(cls.LINEAR, FieldVector.polar(1.0, theta, phi))

    @classmethod
    def from_components(cls, bx, by, bz) -> "MWDrive":
        return cls(cls.COMPLEX, FieldVector.cartesian(bx, by, bz))

    @classmethod
    def unpolarized(cls, plane_normal: FieldVector) -> "MWDrive":
        return cls(cls.UNPOLARIZED, plane_normal)

    def polarization_vectors(self) -> list[FieldVector]:
        """Concrete unit polarization vectors to average over (1 or 2)."""
        if self.mode in (self.LINEAR, self.COMPLEX):
            return [self.vector]
        n = self.vector.real_components()
        ref = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        u = np.cross(n, ref)
        u /= np.linalg.norm(u)
        v = np.cross(n, u)
        return [FieldVector(u), FieldVector(v)]


@dataclass(frozen=True)
class TransitionLine:
    """One |i> -> |f> line: center frequency (MHz) and dimensionless strength."""

    frequency: float
    amplitude: float
    i: int
    f: int


@dataclass(frozen=True)
class GridSpec:
    """Uniform frequency grid [f_min, f_max] with the given step, MHz."""

    f_min: float = 2820.0
    f_max: float = 2920.0
    step: float = 0.1

    def __post_init__(self):
        if not (np.isfinite(self.f_min) and np.isfinite(self.f_max) and np.isfinite(self.step)):
            raise InvalidInputError("grid bounds and step must be finite")
        if self.step <= 0:
            raise InvalidInputError(f"grid step must be > 0, got {self.step}")
        if self.f_max <= self.f_min:
            raise InvalidInputError("grid needs f_max > f_min")

    def frequencies(self) -> np.ndarray:
        n = int(math.floor((self.f_max - self.f_min) / self.step + 1e-9)) + 1
        return self.f_min + self.step * np.arange(n)


@dataclass(frozen=True)
class Spectrum:
    """Transition strength on a frequency grid, plus provenance."""

    grid: np.ndarray
    values: np.ndarray
    linewidth: float
    contributors: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        self.grid.setflags(write=False)
        self.values.setflags(write=False)

    def __add__(self, other: "Spectrum") -> "Spectrum":
        if self.grid.shape != other.grid.shape or np.any(self.grid != other.grid):
            raise InvalidInputError("cannot add spectra on different grids")
        return Spectrum(self.grid, self.values + other.values, self.linewidth,
                        self.contributors + other.contributors)

    def scaled(self, factor: float) -> "Spectrum":
        return Spectrum(self.grid, self.values * factor, self.linewidth, self.contributors)


def interaction_matrix(drive_vec: FieldVector,
                       constants: PhysicalConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    """9x9 MW coupling matrix for a (possibly complex) polarization vector."""
    out = np.zeros((9, 9), dtype=complex)
    for component, el_op, nuc_op in zip(drive_vec.components, ELECTRON_OPS, NUCLEAR_OPS):
        out += component * (constants.gamma_nv * el_op + constants.gamma_n * nuc_op)
    return out


def transition_lines(eig: EigenSystem, drive_vec: FieldVector,
                     constants: PhysicalConstants = DEFAULT_CONSTANTS) -> list[TransitionLine]:
    """All 36 pairwise lines for a unit polarization vector in the NV frame."""
    if abs(drive_vec.magnitude - 1.0) > 1e-9:
        raise InvalidInputError("drive polarization vector must be unit-normalized")
    v = eig.vectors
    m = v.conj().T @ interaction_matrix(drive_vec, constants) @ v
    freqs = eig.frequencies[_PAIR_F] - eig.frequencies[_PAIR_I]
    amps = np.abs(m[_PAIR_F, _PAIR_I]) ** 2
    return [TransitionLine(float(fr), float(am), int(i), int(f))
            for fr, am, i, f in zip(freqs, amps, _PAIR_I, _PAIR_F)]


def lorentzian(nu, center: float, delta: float):
    """Unit-peak Lorentzian of FWHM delta centered at ``center``."""
    q = delta * delta / 4.0
    return q / ((nu - center) ** 2 + q)


def broaden(lines, grid: GridSpec | np.ndarray, delta: float,
            contributors: tuple[str, ...] = ()) -> Spectrum:
    """Sum of Lorentzian profiles of the given lines on the grid."""
    if delta <= 0:
        raise InvalidInputError(f"linewidth must be > 0, got {delta}")
    nu = grid.frequencies() if isinstance(grid, GridSpec) else np.asarray(grid)
    values = np.zeros_like(nu)
    lo = nu[0] - LINE_WINDOW_LINEWIDTHS * delta
    hi = nu[-1] + LINE_WINDOW_LINEWIDTHS * delta
    freqs = np.array([ln.frequency for ln in lines])
    amps = np.array([ln.amplitude for ln in lines])
    keep = (freqs >= lo) & (freqs <= hi)
    if keep.any():
        q = delta * delta / 4.0
        values = (amps[keep, None] * q
                  / ((nu[None, :] - freqs[keep, None]) ** 2 + q)).sum(axis=0)
    return Spectrum(grid=nu, values=values, linewidth=delta, contributors=contributors)


def lines_value_at(nu: float, lines, delta: float) -> float:
    """Exact broadened-spectrum value at one frequency (no grid)."""
    return float(sum(ln.amplitude * lorentzian(nu, ln.frequency, delta) for ln in lines))


def config_lines(b_lab: FieldVector, e_lab: FieldVector, drive_vec_lab: FieldVector,
                 config: NVConfiguration,
                 constants: PhysicalConstants = DEFAULT_CONSTANTS,
                 pre_rotation: np.ndarray | None = None) -> list[TransitionLine]:
    """Transition lines of one configuration for a lab-frame polarization vector."""
    b_nv = lab_to_nv(b_lab, config, pre_rotation)
    e_nv = lab_to_nv(e_lab, config, pre_rotation)
    d_nv = lab_to_nv(drive_vec_lab, config, pre_rotation)
    eig = diagonalize(build_total(b_nv, e_nv, constants))
    return transition_lines(eig, d_nv, constants)


def single_config_spectrum(b_lab: FieldVector, e_lab: FieldVector, drive: MWDrive,
                           config: NVConfiguration, grid: GridSpec, delta: float,
                           constants: PhysicalConstants = DEFAULT_CONSTANTS,
                           pre_rotation: np.ndarray | None = None) -> Spectrum:
    """Broadened spectrum of a single configuration (unit weight).

    Unpolarized drives average the spectra of the two in-plane polarizations.
    """
    pols = drive.polarization_vectors()
    out = None
    for p in pols:
        lines = config_lines(b_lab, e_lab, p, config, constants, pre_rotation)
        sp = broaden(lines, grid, delta, contributors=(config.label,))
        out = sp if out is None else Spectrum(out.grid, out.values + sp.values,
                                              delta, (config.label,))
    return out.scaled(1.0 / len(pols))


def ensemble_spectrum(b_lab: FieldVector, e_lab: FieldVector, drive: MWDrive,
                      grid: GridSpec, delta: float, weights=None,
                      constants: PhysicalConstants = DEFAULT_CONSTANTS,
                      pre_rotation: np.ndarray | None = None) -> Spectrum:
    """Population-weighted spectrum over the eight configurations.

    Accumulation runs in the fixed order NV1-NV, NV1-VN, ..., NV4-VN so the
    result does not depend on scheduling.
    """
    configs = all_configurations(weights)
    nu = grid.frequencies()
    values = np.zeros_like(nu)
    labels = []
    for cfg in configs:
        if cfg.weight == 0.0:
            continue
        sp = single_config_spectrum(b_lab, e_lab, drive, cfg, grid, delta,
                                    constants, pre_rotation)
        values += cfg.weight * sp.values
        labels.append(cfg.label)
    return Spectrum(grid=nu, values=values, linewidth=delta, contributors=tuple(labels))


def local_maxima(values: np.ndarray, min_value: float = 0.0) -> list[int]:
    """Indices of strict-left, non-strict-right local maxima above a floor."""
    out = []
    for i in range(1, len(values) - 1):
        if values[i] > values[i - 1] and values[i] >= values[i + 1] and values[i] >= min_value:
            out.append(i)
    return out


def refine_peak(grid: np.ndarray, values: np.ndarray, index: int) -> float:
    """Sub-grid peak center by a 3-point parabola through the apex."""
    if index <= 0 or index >= len(values) - 1:
        return float(grid[index])
    y0, y1, y2 = values[index - 1], values[index], values[index + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return float(grid[index])
    step = grid[1] - grid[0]
    return float(grid[index] + 0.5 * (y0 - y2) / denom * step)
