"""Differential electric-field sensitivity and parameter sweeps.

The sensitivity figure used throughout is the forward difference

    dS(nu) = [T(nu; E + dE) - T(nu; E)] / dE

with the perturbation applied along the E direction (or along an explicit
unit vector when |E| = 0).  Larger |dS| means a larger photoluminescence
change per field change; it is the inverse of the metrological
sensitivity eta, so "better" is "bigger" here.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .errors import InvalidInputError
from .fields import FieldVector
from .scene import Scene

SWEEP_PARAMETERS = ("b_magnitude", "b_misalignment", "phi_mw", "phi_b", "e_magnitude")


@dataclass(frozen=True)
class SensitivitySpectrum:
    """dS per grid frequency, with the perturbation that produced it."""

    grid: np.ndarray
    ds: np.ndarray
    delta_e: float

    def __post_init__(self):
        self.grid.setflags(write=False)
        self.ds.setflags(write=False)

    def extrema(self) -> tuple[float, float, float, float]:
        """(freq_of_max, max, freq_of_min, min) of dS over the grid."""
        imax = int(np.argmax(self.ds))
        imin = int(np.argmin(self.ds))
        return (float(self.grid[imax]), float(self.ds[imax]),
                float(self.grid[imin]), float(self.ds[imin]))


@dataclass(frozen=True)
class SweepResult:
    """Per-value sensitivity extrema for one swept parameter."""

    parameter: str
    values: np.ndarray
    freq_of_max: np.ndarray
    ds_max: np.ndarray
    freq_of_min: np.ndarray
    ds_min: np.ndarray
    spectra: tuple = ()

    def __post_init__(self):
        for arr in (self.values, self.freq_of_max, self.ds_max, self.freq_of_min, self.ds_min):
            arr.setflags(write=False)


def sensitivity_spectrum(scene: Scene, delta_e: float | None = None,
                         direction: FieldVector | None = None) -> SensitivitySpectrum:
    """Forward-difference sensitivity spectrum of a scene.

    Without ``direction`` the perturbation increases |E| along its own
    direction, which requires |E| > 0.  With ``direction`` (a lab-frame unit
    vector) the perturbation is ``delta_e * direction`` regardless of E.
    """
    de = scene.delta_e if delta_e is None else float(delta_e)
    if de <= 0:
        raise InvalidInputError(f"delta_e must be > 0, got {de}")
    base = scene.spectrum()
    e_lab = scene.e_lab()
    if direction is None:
        e_mag = e_lab.magnitude
        if e_mag == 0.0:
            raise InvalidInputError(
                "perturbation direction undefined for |E| = 0; pass an explicit direction")
        if de > 0.1 * e_mag:
            warnings.warn(f"delta_e = {de:.3g} V/m is more than 10% of |E| = {e_mag:.3g} V/m; "
                          "the forward difference may leave the linear regime", stacklevel=2)
        perturbed_scene = scene.with_e_lab(
            FieldVector(e_lab.components * (1.0 + de / e_mag)))
    else:
        d = direction.normalized()
        perturbed_scene = scene.with_e_lab(
            FieldVector(e_lab.components + de * d.components))
    perturbed = perturbed_scene.spectrum()
    ds = (perturbed.values - base.values) / de
    return SensitivitySpectrum(grid=base.grid.copy(), ds=ds, delta_e=de)


def _apply_parameter(scene: Scene, parameter: str, value: float) -> Scene:
    if parameter == "b_magnitude":
        return scene.with_b_magnitude(value)
    if parameter == "b_misalignment":
        return scene.with_b_theta_offset(value)
    if parameter == "phi_mw":
        return scene.with_phi_mw(value)
    if parameter == "phi_b":
        return scene.with_phi_b(value)
    if parameter == "e_magnitude":
        return scene.with_e_magnitude(value)
    raise InvalidInputError(f"unknown sweep parameter {parameter!r}; "
                            f"expected one of {SWEEP_PARAMETERS}")


def sweep(scene: Scene, parameter: str, values, delta_e: float | None = None,
          keep_spectra: bool = False) -> SweepResult:
    """Rebuild the scene per value, compute dS, record its extrema over nu.

    ``b_misalignment`` offsets the polar angle of B in the frame it was
    specified in, i.e. it tilts B inside the plane spanned by that frame's
    z axis and the original B direction.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise InvalidInputError("sweep needs at least one value")
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("sweep values must be finite")
    fmax, dsmax, fmin, dsmin, spectra = [], [], [], [], []
    for value in values:
        point = _apply_parameter(scene, parameter, float(value))
        sens = sensitivity_spectrum(point, delta_e)
        f1, v1, f2, v2 = sens.extrema()
        fmax.append(f1)
        dsmax.append(v1)
        fmin.append(f2)
        dsmin.append(v2)
        if keep_spectra:
            spectra.append((point.spectrum(), sens))
    return SweepResult(parameter=parameter, values=values,
                       freq_of_max=np.array(fmax), ds_max=np.array(dsmax),
                       freq_of_min=np.array(fmin), ds_min=np.array(dsmin),
                       spectra=tuple(spectra))


def transverse_transition_frequencies(
        e_frame: FieldVector, b_perp: float, phi_b: float,
        constants: PhysicalConstants = DEFAULT_CONSTANTS) -> tuple[float, float]:
    """Closed-form m_I = 0 transition pair for strictly transverse B.

    With lam = (gamma_nv * B_perp)^2 / (2 D_gs) and phi = 2 phi_b + phi_e:

        f_pm = D_gs + d_par Ez + 3 lam
               +- sqrt((d_perp E_perp)^2 + 2 lam d_perp E_perp cos(phi) + lam^2)

    The 3*lam mean shift (|0> repelled by -2 lam, |+-1> raised by +lam) and
    the +cos cross term follow from second-order perturbation theory with
    the sign conventions of :mod:`.hamiltonian`; exact diagonalization
    confirms both to order (gamma B)^4 / D^3.
    """
    c = constants
    e = e_frame.real_components()
    e_perp = float(np.hypot(e[0], e[1]))
    phi_e = float(np.arctan2(e[1], e[0]))
    lam = c.lambda_shift(b_perp)
    de = c.d_transverse * e_perp
    radical = np.sqrt(de * de + 2.0 * lam * de * np.cos(2.0 * phi_b + phi_e) + lam * lam)
    mean = c.d_gs + c.d_parallel * e[2] + 3.0 * lam
    return float(mean - radical), float(mean + radical)


def polarization_branch_weights(phi_mw: float, phi_e: float) -> tuple[float, float]:
    """Relative strengths (lower, upper) of the m_I = 0 doublet vs MW angle.

    For a transverse electric field of azimuth phi_e and an in-plane linear
    drive at azimuth phi_mw (both in the NV frame, zero magnetic field):

        T_lower ~ 1 - cos(2 phi_mw + phi_e),  T_upper ~ 1 + cos(2 phi_mw + phi_e)

    up to a common normalization.
    """
    c = np.cos(2.0 * phi_mw + phi_e)
    return float(1.0 - c), float(1.0 + c)
