"""Full-vector electrometry from a single bias-field configuration.

With the bias field B orthogonal to exactly two defect axes, those two
orientations keep their electric-field response while all others are
Zeeman-dominated.  For each sensitive orientation the transverse field
projection (E_perp, phi_E) is obtained from a measured central doublet plus
a microwave polarization scan, and the two projections pin the lab-frame
vector E as the intersection of two lines.

Measurement protocol assumed by the extraction helpers (and produced by
:func:`measure_orientation` when simulating):

* doublet spectrum: the orientation's NV-polarity family, driven by
  unpolarized MW in the plane normal to its axis (this balances the two
  branch amplitudes, so both peaks are visible at any phi_E);
* polarization scan: transition strength at the measured lower-branch peak
  versus the azimuth of a linear MW polarization rotating in a known lab
  plane.

Fitting is model-consistent: candidate (E_perp, phi_E) pairs are pushed
through the same simulation and the same peak estimator that produced the
measured numbers, so blended hyperfine satellites bias the fit on both
sides equally and cancel.  Note that for an ensemble with equal NV/VN
populations the sign of the projection (phi_E vs phi_E + pi) is not
observable; extraction from single-polarity spectra, as done here, is free
of that ambiguity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .errors import ExtractionError, GeometryError, InvalidInputError
from .fields import FieldVector
from .geometry import (NVConfiguration, Orientation, Polarity, all_configurations, axis_of,
                       lab_to_nv, sensitive_orientations, transform_for)
from .hamiltonian import ELECTRON_OPS, NUCLEAR_OPS, build_total, diagonalize
from .scene import DriveSpec, Scene
from .spectrum import MWDrive, Spectrum, local_maxima, refine_peak

_PAIR_I, _PAIR_F = np.triu_indices(9, k=1)


@dataclass(frozen=True)
class TransverseProjection:
    """Transverse E in one body frame: magnitude, azimuth, and fit residual."""

    orientation: Orientation
    e_perp: float
    phi_e: float
    residual: float

    def __post_init__(self):
        if self.e_perp < 0:
            raise InvalidInputError(f"e_perp must be >= 0, got {self.e_perp}")
        object.__setattr__(self, "phi_e", self.phi_e % (2.0 * math.pi))


@dataclass(frozen=True)
class ReconstructedField:
    """Lab-frame E from two projections; residual is the gap between the
    two solution lines at closest approach (V/m)."""

    e_lab: FieldVector
    residual: float
    projections: tuple[TransverseProjection, ...]


# ---------------------------------------------------------------------------
# fast per-configuration picture: one diagonalization, many drive vectors
# ---------------------------------------------------------------------------

class _ConfigPicture:
    """Eigensystem of one configuration plus cached MW coupling matrices."""

    def __init__(self, b_nv: FieldVector, e_nv: FieldVector, constants: PhysicalConstants):
        eig = diagonalize(build_total(b_nv, e_nv, constants))
        self.freqs = eig.frequencies[_PAIR_F] - eig.frequencies[_PAIR_I]
        v = eig.vectors
        self._m_axes = []
        for el_op, nuc_op in zip(ELECTRON_OPS, NUCLEAR_OPS):
            h_axis = constants.gamma_nv * el_op + constants.gamma_n * nuc_op
            m = v.conj().T @ h_axis @ v
            self._m_axes.append(m[_PAIR_F, _PAIR_I])

    def amplitudes(self, drive_nv: FieldVector) -> np.ndarray:
        bx, by, bz = drive_nv.components
        return np.abs(bx * self._m_axes[0] + by * self._m_axes[1] + bz * self._m_axes[2]) ** 2

    def spectrum_values(self, grid: np.ndarray, drive_nv: FieldVector, delta: float) -> np.ndarray:
        amps = self.amplitudes(drive_nv)
        q = delta * delta / 4.0
        keep = (self.freqs >= grid[0] - 10 * delta) & (self.freqs <= grid[-1] + 10 * delta)
        if not keep.any():
            return np.zeros_like(grid)
        return (amps[keep, None] * q
                / ((grid[None, :] - self.freqs[keep, None]) ** 2 + q)).sum(axis=0)

    def value_at(self, nu: float, drive_nv: FieldVector, delta: float) -> float:
        amps = self.amplitudes(drive_nv)
        q = delta * delta / 4.0
        return float((amps * q / ((nu - self.freqs) ** 2 + q)).sum())


def _scene_pictures(scene: Scene) -> list[tuple[NVConfiguration, float, _ConfigPicture]]:
    b_lab, e_lab = scene.b_lab(), scene.e_lab()
    rot = scene.rotation()
    if scene.selection is not None:
        configs = [scene.selection]
        weights = [1.0]
    else:
        configs = all_configurations(scene.weights)
        weights = [c.weight for c in configs]
    out = []
    for cfg, w in zip(configs, weights):
        if w == 0.0:
            continue
        pic = _ConfigPicture(lab_to_nv(b_lab, cfg, rot), lab_to_nv(e_lab, cfg, rot),
                             scene.constants)
        out.append((cfg, w, pic))
    return out


def polarization_scan(scene: Scene, transition_freq: float, phi_values) -> np.ndarray:
    """Spectrum value at one frequency versus linear-MW azimuth.

    The polarization rotates in the plane set by the scene's drive
    specification (its theta and frame); ``phi_values`` are radians in that
    frame.  The scene's selection (single configuration or ensemble) is
    honored.
    """
    phi_values = np.asarray(phi_values, dtype=float)
    pictures = _scene_pictures(scene)
    rot = scene.rotation()
    theta = scene.drive.theta
    frame = scene.drive.frame
    out = np.zeros(phi_values.shape)
    for n, phi in enumerate(phi_values):
        drive = DriveSpec(mode=MWDrive.LINEAR, theta=theta, phi=float(phi), frame=frame).drive()
        vec_lab = drive.vector
        total = 0.0
        for cfg, w, pic in pictures:
            total += w * pic.value_at(transition_freq, lab_to_nv(vec_lab, cfg, rot),
                                      scene.linewidth)
        out[n] = total
    return out


# ---------------------------------------------------------------------------
# doublet location and closed-form splitting inversion
# ---------------------------------------------------------------------------

def find_doublet(spectrum: Spectrum, window: tuple[float, float] | None = None
                 ) -> tuple[float, float]:
    """Locate the two dominant peaks in a window (refined to sub-grid).

    Dominant means: local maxima at or above half of the window maximum; of
    those, the two largest.  Raises :class:`ExtractionError` when fewer than
    two qualify (unresolved splitting).
    """
    grid, values = spectrum.grid, spectrum.values
    if window is not None:
        sel = (grid >= window[0]) & (grid <= window[1])
        if sel.sum() < 3:
            raise ExtractionError(f"window {window} holds fewer than 3 grid points")
        grid, values = grid[sel], values[sel]
    peak_idx = local_maxima(values, min_value=0.5 * values.max())
    if len(peak_idx) < 2:
        raise ExtractionError(
            f"found {len(peak_idx)} dominant peak(s); splitting unresolved at this "
            f"linewidth/grid")
    top_two = sorted(sorted(peak_idx, key=lambda i: -values[i])[:2])
    return refine_peak(grid, values, top_two[0]), refine_peak(grid, values, top_two[1])


def invert_splitting(splitting: float, phi: float, b_perp: float,
                     constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """E_perp from a measured m_I = 0 splitting, given phi = 2 phi_B + phi_E.

    Inverts  splitting/2 = sqrt(de^2 + 2 lam de cos(phi) + lam^2)  for
    de = d_perp E_perp >= 0 (the closed form behind
    :func:`.sensing.transverse_transition_frequencies`).
    """
    if splitting <= 0:
        raise InvalidInputError(f"splitting must be > 0, got {splitting}")
    lam = constants.lambda_shift(b_perp)
    c = math.cos(phi)
    disc = splitting * splitting / 4.0 - lam * lam * (1.0 - c * c)
    if disc < 0:
        raise ExtractionError(
            f"splitting {splitting:.4f} MHz is below the transverse-Zeeman floor "
            f"2*lam*|sin(phi)| = {2 * lam * abs(math.sin(phi)):.4f} MHz")
    de = -lam * c + math.sqrt(disc)
    return max(de, 0.0) / constants.d_transverse


def extract_splitting(spectrum: Spectrum, window: tuple[float, float],
                      b_perp: float, phi_b: float, phi_e: float,
                      constants: PhysicalConstants = DEFAULT_CONSTANTS
                      ) -> tuple[float, float]:
    """Peak-pair splitting inverted to E_perp; returns (e_perp, uncertainty).

    The uncertainty is the peak-location granularity (one grid step mapped
    through the inversion).  Requires B_perp and the azimuths to be known.
    """
    f_lo, f_hi = find_doublet(spectrum, window)
    step = float(spectrum.grid[1] - spectrum.grid[0])
    phi = 2.0 * phi_b + phi_e
    e_perp = invert_splitting(f_hi - f_lo, phi, b_perp, constants)
    uncertainty = abs(invert_splitting(f_hi - f_lo + step, phi, b_perp, constants) - e_perp)
    return e_perp, uncertainty


# ---------------------------------------------------------------------------
# measurement + model-consistent projection fit
# ---------------------------------------------------------------------------

DEFAULT_SCAN_PHIS = np.radians(np.arange(0.0, 180.0, 7.5))


@dataclass(frozen=True)
class OrientationMeasurement:
    """Inputs the projection fit needs for one orientation."""

    orientation: Orientation
    grid: np.ndarray              # doublet-spectrum frequencies, MHz
    values: np.ndarray            # doublet-spectrum strengths
    window: tuple[float, float]
    scan_phis: np.ndarray         # radians, in the scan drive's frame
    scan_curve: np.ndarray        # strength at the lower peak per phi
    scan_theta: float             # polar angle of the rotating linear drive
    scan_frame: str               # frame tag of the scan drive


class _PairEstimator:
    """Shared forward model: orientation k at NV polarity, body-frame E."""

    def __init__(self, scene: Scene, orientation: Orientation, meas: OrientationMeasurement):
        self.config = NVConfiguration(orientation, Polarity.NV, weight=1.0)
        self.b_nv = lab_to_nv(scene.b_lab(), self.config, scene.rotation())
        self.constants = scene.constants
        self.delta = scene.linewidth
        self.meas = meas
        self.rot = scene.rotation()
        sel = (meas.grid >= meas.window[0]) & (meas.grid <= meas.window[1])
        self.win_grid = meas.grid[sel]
        # unpolarized in the body transverse plane = average over x and y drives
        self.doublet_drives = [FieldVector.cartesian(1.0, 0.0, 0.0),
                               FieldVector.cartesian(0.0, 1.0, 0.0)]
        self.scan_drives_nv = np.array([
            lab_to_nv(DriveSpec(mode=MWDrive.LINEAR, theta=meas.scan_theta, phi=float(p),
                                frame=meas.scan_frame).drive().vector, self.config, self.rot)
            .components for p in meas.scan_phis])

    def picture(self, e_perp: float, phi_e: float) -> _ConfigPicture:
        e_nv = FieldVector.cartesian(e_perp * math.cos(phi_e), e_perp * math.sin(phi_e), 0.0)
        return _ConfigPicture(self.b_nv, e_nv, self.constants)

    def doublet_spectrum(self, pic: _ConfigPicture) -> np.ndarray:
        vals = np.zeros_like(self.win_grid)
        for d in self.doublet_drives:
            vals += pic.spectrum_values(self.win_grid, d, self.delta)
        return vals / 2.0

    def scan_curve(self, pic: _ConfigPicture, freq: float) -> np.ndarray:
        m = np.stack(pic._m_axes)                     # (3, npairs)
        amps = np.abs(self.scan_drives_nv @ m) ** 2   # (nphis, npairs)
        q = self.delta * self.delta / 4.0
        return amps @ (q / ((freq - pic.freqs) ** 2 + q))


def _scaled_sse(target: np.ndarray, model: np.ndarray) -> float:
    denom = float(model @ model)
    if denom == 0.0:
        return float(target @ target) / max(float(target @ target), 1e-300)
    scale = float(target @ model) / denom
    return float(((target - scale * model) ** 2).sum()) / max(float(target @ target), 1e-300)


def _golden_min(fun, a: float, b: float, tol: float) -> float:
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = fun(d)
    return 0.5 * (a + b)


def fit_projection(scene: Scene, meas: OrientationMeasurement,
                   coarse_step_deg: float = 6.0) -> TransverseProjection:
    """Fit (E_perp, phi_E) of one orientation to its measurement set.

    For each candidate phi_E the model E_perp is pinned from the doublet
    measurement, then phi_E minimizes a composite misfit (scan curve with
    free scale, window spectrum shape, leftover splitting mismatch) on a
    coarse grid refined by golden-section search.  The E_perp solve picks
    its strategy from the measured splitting: above the satellite-blend
    zone (~2|A_par|) a secant matches the simulated splitting through the
    same peak estimator; inside the zone, where one blended splitting is
    produced by two different E_perp values, E_perp is profiled against the
    scan curve instead (which separates the branches sharply); unresolved
    doublets fall back to a window-shape fit.  The reported residual keeps
    a floor set by the axial Stark offset (candidates carry Ez = 0, which
    shifts nothing observable but offsets the window shape slightly).
    """
    est = _PairEstimator(scene, meas.orientation, meas)
    b_nv = est.b_nv.real_components()
    b_perp = float(np.hypot(b_nv[0], b_nv[1]))
    phi_b = float(np.arctan2(b_nv[1], b_nv[0]))
    constants = scene.constants

    sel = (meas.grid >= meas.window[0]) & (meas.grid <= meas.window[1])
    meas_window_vals = meas.values[sel]
    try:
        f_lo, f_hi = find_doublet(
            Spectrum(meas.grid.copy(), meas.values.copy(), scene.linewidth), meas.window)
        meas_split = f_hi - f_lo
    except ExtractionError:
        meas_split = None  # unresolved: fall back to shape fitting

    # keep candidate doublets inside the window: splitting <= 0.9 * span
    span = meas.window[1] - meas.window[0]
    e_cap = 0.45 * span / constants.d_transverse

    def blended(e_perp: float, phi_e: float):
        """(splitting, lower peak, picture, window values) of one candidate.

        Out-of-window or merged candidates report a penalty splitting that
        steers the secant back (huge when the doublet left the window, tiny
        when it merged)."""
        pic = est.picture(e_perp, phi_e)
        vals = est.doublet_spectrum(pic)
        sp = Spectrum(est.win_grid.copy(), vals.copy(), est.delta)
        try:
            lo, hi = find_doublet(sp)
            return hi - lo, lo, pic, vals
        except ExtractionError:
            lo = float(est.win_grid[int(np.argmax(vals))])
            merged = vals.max() >= 0.25 * (pic.amplitudes(est.doublet_drives[0]).max() + 1e-300)
            return (0.0 if merged else 2.0 * span), lo, pic, vals

    def shape_fit(phi_e: float, e_hi: float) -> float:
        """E_perp minimizing the window-spectrum misfit (coarse scan + golden)."""
        def mismatch(e_perp):
            return _scaled_sse(meas_window_vals, est.doublet_spectrum(
                est.picture(e_perp, phi_e)))
        probes = np.linspace(0.0, e_hi, 17)
        best = int(np.argmin([mismatch(e) for e in probes]))
        cell = probes[1] - probes[0]
        lo = max(0.0, probes[best] - cell)
        return _golden_min(mismatch, lo, min(e_hi, probes[best] + cell), e_hi * 1e-5)

    lam = constants.lambda_shift(b_perp)
    # below ~2|A_par| the measured "doublet" is a satellite blend and its
    # splitting is reproduced by two different E_perp values; inside this
    # zone the scan curve, not the splitting, identifies E_perp
    blend_zone = (meas_split is not None
                  and meas_split < 2.0 * abs(constants.a_parallel) + 2.0 * scene.linewidth)

    def scan_profile_fit(phi_e: float, e_hi: float) -> float:
        """E_perp minimizing the scan-curve misfit (coarse scan + golden)."""
        def mismatch(e_perp):
            s, f_low, pic, _ = blended(e_perp, phi_e)
            return _scaled_sse(meas.scan_curve, est.scan_curve(pic, f_low))
        probes = np.linspace(0.0, e_hi, 13)
        best = int(np.argmin([mismatch(e) for e in probes]))
        cell = probes[1] - probes[0]
        lo = max(0.0, probes[best] - cell)
        return _golden_min(mismatch, lo, min(e_hi, probes[best] + cell), e_hi * 2e-4)

    def solve_e_perp(phi_e: float):
        """E_perp consistent with the measured doublet at this phi_e."""
        if meas_split is None:
            e_hi = (lam + scene.linewidth) / constants.d_transverse
            e_perp = shape_fit(phi_e, e_hi)
            s1, f1, pic, vals = blended(e_perp, phi_e)
            return e_perp, pic, f1, 0.0, vals
        if blend_zone:
            e_hi = min(e_cap, (abs(constants.a_parallel) + lam + scene.linewidth)
                       / constants.d_transverse)
            e_perp = scan_profile_fit(phi_e, e_hi)
            s1, f1, pic, vals = blended(e_perp, phi_e)
            return e_perp, pic, f1, 0.0, vals
        try:
            e_seed = invert_splitting(meas_split, 2.0 * phi_b + phi_e, b_perp, constants)
        except ExtractionError:
            e_seed = meas_split / (2.0 * constants.d_transverse)
        e1 = min(max(e_seed, 1e2), e_cap)
        s1, f_low, pic, vals = blended(e1, phi_e)
        e2 = e1
        for _ in range(14):
            if abs(s1 - meas_split) < 1e-6:
                break
            e2 = e1 * (1.0 + 0.03 * math.copysign(1.0, meas_split - s1)) if e2 == e1 else e2
            s2, f_low, pic, vals = blended(e2, phi_e)
            if s2 == s1:
                e1, s1 = e2, s2
                break
            e_next = e2 - (s2 - meas_split) * (e2 - e1) / (s2 - s1)
            e1, s1 = e2, s2
            e2 = min(max(e_next, 1e2), e_cap)
        else:
            s1, f_low, pic, vals = blended(e1, phi_e)
        if abs(s1 - meas_split) > 1e-3 * (meas_split + est.delta):
            # the peak-pair estimator switches identity near a collapsed
            # doublet and the secant cannot follow; fit the window shape
            e_hi = min(e_cap, 2.0 * max(e_seed, 0.0)
                       + (lam + scene.linewidth) / constants.d_transverse)
            e1 = shape_fit(phi_e, e_hi)
            s1, f_low, pic, vals = blended(e1, phi_e)
        mismatch = (s1 - meas_split) / (meas_split + est.delta)
        return e1, pic, f_low, mismatch * mismatch, vals

    def residual(phi_e: float) -> tuple[float, float]:
        # scan-curve misfit plus the window-spectrum shape misfit plus any
        # leftover splitting mismatch; the extra terms cost nothing (the
        # arrays are already computed) and keep phi_E identifiable when the
        # central doublet collapses (d_perp E_perp cancelling the
        # transverse-Zeeman term), where the scan curve alone goes flat
        e_perp, pic, f_low, split_term, win_vals = solve_e_perp(phi_e)
        curve = est.scan_curve(pic, f_low)
        shape_term = _scaled_sse(meas_window_vals, win_vals)
        return _scaled_sse(meas.scan_curve, curve) + shape_term + 4.0 * split_term, e_perp

    cand = np.radians(np.arange(0.0, 360.0, coarse_step_deg))
    coarse = [residual(p)[0] for p in cand]
    center = float(cand[int(np.argmin(coarse))])
    half = math.radians(coarse_step_deg)
    phi_e = _golden_min(lambda p: residual(p)[0], center - half, center + half, 2e-4)
    res, e_perp = residual(phi_e)
    return TransverseProjection(orientation=meas.orientation, e_perp=e_perp,
                                phi_e=phi_e, residual=res)


def measure_orientation(scene: Scene, orientation: Orientation,
                        scan_phis: np.ndarray = DEFAULT_SCAN_PHIS,
                        window: tuple[float, float] | None = None
                        ) -> OrientationMeasurement:
    """Simulate the measurement set of one orientation from a scene.

    The doublet spectrum uses the orientation's NV-polarity family with
    unpolarized MW normal to its axis; the scan rotates a linear drive in
    the plane given by the scene's drive spec (theta and frame) and records
    the strength at the measured lower peak.
    """
    config = NVConfiguration(orientation, Polarity.NV, weight=1.0)
    rot = scene.rotation()
    pic = _ConfigPicture(lab_to_nv(scene.b_lab(), config, rot),
                         lab_to_nv(scene.e_lab(), config, rot), scene.constants)
    grid = scene.grid.frequencies()
    vals = np.zeros_like(grid)
    for d in (FieldVector.cartesian(1.0, 0.0, 0.0), FieldVector.cartesian(0.0, 1.0, 0.0)):
        vals += pic.spectrum_values(grid, d, scene.linewidth)
    vals /= 2.0
    if window is None:
        window = (float(grid[0]), float(grid[-1]))
    try:
        f_lo, _ = find_doublet(Spectrum(grid.copy(), vals.copy(), scene.linewidth), window)
    except ExtractionError:
        sel = (grid >= window[0]) & (grid <= window[1])
        f_lo = float(grid[sel][np.argmax(vals[sel])])
    theta, frame = scene.drive.theta, scene.drive.frame
    curve = np.array([
        pic.value_at(f_lo, lab_to_nv(
            DriveSpec(mode=MWDrive.LINEAR, theta=theta, phi=float(p), frame=frame)
            .drive().vector, config, rot), scene.linewidth)
        for p in scan_phis])
    return OrientationMeasurement(orientation=orientation, grid=grid, values=vals,
                                  window=window, scan_phis=np.asarray(scan_phis, float),
                                  scan_curve=curve, scan_theta=theta, scan_frame=frame)


def extract_phi_e(scan_curve: np.ndarray, scene: Scene, orientation: Orientation,
                  meas: OrientationMeasurement | None = None) -> float:
    """Azimuth of the transverse projection from a polarization-scan curve.

    Thin wrapper over :func:`fit_projection` (the lab-plane scan is not
    sinusoidal in general, so the angle is fit by forward simulation rather
    than by inverting the transverse-plane selection rule).
    """
    if meas is None:
        meas = measure_orientation(scene, orientation)
    if len(scan_curve) != len(meas.scan_phis):
        raise InvalidInputError("scan curve length does not match the scan angles")
    meas = OrientationMeasurement(
        orientation=meas.orientation, grid=meas.grid, values=meas.values,
        window=meas.window, scan_phis=meas.scan_phis,
        scan_curve=np.asarray(scan_curve, float),
        scan_theta=meas.scan_theta, scan_frame=meas.scan_frame)
    return fit_projection(scene, meas).phi_e


def reconstruct_vector(proj_a: TransverseProjection, proj_b: TransverseProjection,
                       residual_tol: float | None = None) -> ReconstructedField:
    """Intersect the two solution lines implied by two transverse projections.

    Each projection fixes (x_k . E, y_k . E) in its frame, i.e. a line with
    free component along the frame axis z_k; the 4x3 system is solved in
    least squares and the gap between the two lines at closest approach is
    reported as the residual.
    """
    if proj_a.orientation == proj_b.orientation:
        raise GeometryError("need two distinct orientations to reconstruct a vector")
    rows, rhs = [], []
    for proj in (proj_a, proj_b):
        t = transform_for(proj.orientation)
        rows.extend([t[0], t[1]])
        rhs.extend([proj.e_perp * math.cos(proj.phi_e), proj.e_perp * math.sin(proj.phi_e)])
    a = np.array(rows)
    b = np.array(rhs)
    solution, *_ = np.linalg.lstsq(a, b, rcond=None)

    # closest-approach gap between the two constraint lines
    points, axes = [], []
    for proj in (proj_a, proj_b):
        t = transform_for(proj.orientation)
        points.append(proj.e_perp * (math.cos(proj.phi_e) * t[0] + math.sin(proj.phi_e) * t[1]))
        axes.append(t[2])
    cross = np.cross(axes[0], axes[1])
    residual = float(abs((points[1] - points[0]) @ cross) / np.linalg.norm(cross))

    tol = residual_tol
    if tol is None:
        tol = 0.25 * max(proj_a.e_perp, proj_b.e_perp, 1.0)
    if residual > tol:
        raise GeometryError(
            f"solution lines miss each other by {residual:.3g} V/m (tolerance {tol:.3g}); "
            "projections are inconsistent")
    return ReconstructedField(e_lab=FieldVector(solution), residual=residual,
                              projections=(proj_a, proj_b))


def bias_geometry_report(b_lab: FieldVector) -> dict[Orientation, float]:
    """|B . z_k| / |B| per orientation (diagnostic for geometry errors)."""
    b = b_lab.real_components()
    bn = np.linalg.norm(b)
    if bn == 0:
        raise GeometryError("bias field is zero")
    return {o: float(abs(axis_of(o) @ b) / bn) for o in Orientation}


def vector_electrometry(scene: Scene, orientations=None,
                        scan_phis: np.ndarray = DEFAULT_SCAN_PHIS,
                        windows=None) -> ReconstructedField:
    """Simulate the two-orientation measurement for a scene and reconstruct E.

    ``orientations`` defaults to the two axes orthogonal to the scene's bias
    field; a :class:`GeometryError` lists the per-axis projections when the
    bias does not single out exactly two.
    """
    if orientations is None:
        orientations = sensitive_orientations(scene.b_lab())
        if len(orientations) != 2:
            report = ", ".join(f"{o.name}: {r:.4f}"
                               for o, r in bias_geometry_report(scene.b_lab()).items())
            raise GeometryError(
                f"bias field must be orthogonal to exactly two orientations; "
                f"|B.z_k|/|B| per axis: {report}")
    projections = []
    for n, orientation in enumerate(orientations):
        window = None if windows is None else windows[n]
        meas = measure_orientation(scene, orientation, scan_phis, window)
        projections.append(fit_projection(scene, meas))
    return reconstruct_vector(projections[0], projections[1])
