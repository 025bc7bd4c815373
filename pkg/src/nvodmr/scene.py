"""Scene descriptions: fields + drive + grid + defect selection, and the
flat ``key = value`` configuration file the CLI reads.

Field directions may be specified either in the laboratory frame or in one
NV body frame (tags ``lab``, ``nv1`` ... ``nv4``); body-frame input is
interpreted in the NV-polarity sense and converted to lab coordinates once.
Config files take angles in degrees; the API is radians throughout.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .errors import ConfigError, InvalidInputError
from .fields import FieldVector
from .geometry import NVConfiguration, Orientation, Polarity, transform_for
from .spectrum import GridSpec, MWDrive, Spectrum, ensemble_spectrum, single_config_spectrum

FRAME_TAGS = ("lab", "nv1", "nv2", "nv3", "nv4")


def _frame_to_lab(arr: np.ndarray, frame: str) -> np.ndarray:
    if frame == "lab":
        return arr
    orientation = Orientation[frame.upper()]
    return transform_for(orientation).T @ arr


@dataclass(frozen=True)
class FieldSpec:
    """Static field in polar form, tied to a reference frame."""

    magnitude: float
    theta: float
    phi: float
    frame: str = "lab"

    def __post_init__(self):
        if self.frame not in FRAME_TAGS:
            raise InvalidInputError(f"unknown frame tag {self.frame!r}")
        if self.magnitude < 0:
            raise InvalidInputError(f"field magnitude must be >= 0, got {self.magnitude}")

    def lab_vector(self) -> FieldVector:
        v = FieldVector.polar(self.magnitude, self.theta, self.phi)
        return FieldVector(_frame_to_lab(v.real_components(), self.frame))


@dataclass(frozen=True)
class DriveSpec:
    """Microwave drive: mode plus either polar angles or complex components."""

    mode: str = MWDrive.LINEAR
    theta: float = math.pi / 2
    phi: float = 0.0
    components: tuple = ()
    frame: str = "lab"

    def __post_init__(self):
        if self.frame not in FRAME_TAGS:
            raise InvalidInputError(f"unknown frame tag {self.frame!r}")
        if self.mode not in (MWDrive.LINEAR, MWDrive.COMPLEX, MWDrive.UNPOLARIZED):
            raise InvalidInputError(f"unknown MW mode {self.mode!r}")
        if self.mode == MWDrive.COMPLEX and len(self.components) != 3:
            raise InvalidInputError("complex MW mode needs 3 components")

    def drive(self) -> MWDrive:
        if self.mode == MWDrive.COMPLEX:
            arr = _frame_to_lab(np.asarray(self.components, dtype=complex), self.frame)
            return MWDrive.from_components(*arr)
        v = FieldVector.polar(1.0, self.theta, self.phi)
        arr = _frame_to_lab(v.real_components(), self.frame)
        if self.mode == MWDrive.UNPOLARIZED:
            return MWDrive.unpolarized(FieldVector(arr))
        return MWDrive(MWDrive.LINEAR, FieldVector(arr))


@dataclass(frozen=True)
class Scene:
    """Everything needed to compute one spectrum."""

    b: FieldSpec
    e: FieldSpec
    drive: DriveSpec
    linewidth: float = 1.0
    grid: GridSpec = GridSpec()
    weights: tuple = tuple([0.125] * 8)
    selection: NVConfiguration | None = None  # None = ensemble
    constants: PhysicalConstants = DEFAULT_CONSTANTS
    delta_e: float = 1e5
    pre_rotation: tuple | None = None
    e_lab_override: tuple | None = None  # cartesian lab E, bypasses the polar spec

    def __post_init__(self):
        if self.linewidth <= 0:
            raise InvalidInputError(f"linewidth must be > 0, got {self.linewidth}")
        if self.delta_e <= 0:
            raise InvalidInputError(f"delta_e must be > 0, got {self.delta_e}")

    def b_lab(self) -> FieldVector:
        return self.b.lab_vector()

    def e_lab(self) -> FieldVector:
        if self.e_lab_override is not None:
            return FieldVector.cartesian(*self.e_lab_override)
        return self.e.lab_vector()

    def mw_drive(self) -> MWDrive:
        return self.drive.drive()

    def rotation(self) -> np.ndarray | None:
        if self.pre_rotation is None:
            return None
        return np.asarray(self.pre_rotation, dtype=float).reshape(3, 3)

    def spectrum(self) -> Spectrum:
        if self.selection is not None:
            return single_config_spectrum(
                self.b_lab(), self.e_lab(), self.mw_drive(), self.selection,
                self.grid, self.linewidth, self.constants, self.rotation())
        return ensemble_spectrum(
            self.b_lab(), self.e_lab(), self.mw_drive(), self.grid, self.linewidth,
            self.weights, self.constants, self.rotation())

    # --- parameter rebuilds used by sweeps -------------------------------
    def with_b_magnitude(self, value: float) -> "Scene":
        return dataclasses.replace(self, b=dataclasses.replace(self.b, magnitude=value))

    def with_b_theta_offset(self, offset: float) -> "Scene":
        return dataclasses.replace(self, b=dataclasses.replace(self.b, theta=self.b.theta + offset))

    def with_phi_b(self, value: float) -> "Scene":
        return dataclasses.replace(self, b=dataclasses.replace(self.b, phi=value))

    def with_e_magnitude(self, value: float) -> "Scene":
        if self.e_lab_override is not None:
            raise InvalidInputError("cannot sweep E magnitude with a cartesian override")
        return dataclasses.replace(self, e=dataclasses.replace(self.e, magnitude=value))

    def with_phi_mw(self, value: float) -> "Scene":
        if self.drive.mode == MWDrive.COMPLEX:
            raise InvalidInputError("phi_mw sweeps need a linear or unpolarized drive")
        return dataclasses.replace(self, drive=dataclasses.replace(self.drive, phi=value))

    def with_e_lab(self, e_lab: FieldVector) -> "Scene":
        return dataclasses.replace(self, e_lab_override=tuple(e_lab.components))


# ---------------------------------------------------------------------------
# config file parsing
# ---------------------------------------------------------------------------

_REQUIRED_KEYS = (
    "b_magnitude_gauss", "b_theta_deg", "b_phi_deg",
    "e_magnitude_v_per_m", "e_theta_deg", "e_phi_deg",
    "mw_mode", "linewidth_mhz", "grid_min_mhz", "grid_max_mhz",
)

_CONSTANT_KEYS = {
    "d_gs_mhz": "d_gs",
    "gamma_nv_mhz_per_g": "gamma_nv",
    "d_parallel_mhz_m_per_v": "d_parallel",
    "d_transverse_mhz_m_per_v": "d_transverse",
    "a_parallel_mhz": "a_parallel",
    "a_transverse_mhz": "a_transverse",
    "quadrupole_mhz": "quadrupole",
    "gamma_n_mhz_per_g": "gamma_n",
}


def parse_key_values(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; '#' starts a comment, blank lines ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        out[key.strip().lower()] = value.strip()
    return out


def _get_float(kv: dict, key: str, default=None) -> float:
    if key not in kv:
        if default is not None:
            return default
        raise ConfigError(key, "missing required key")
    try:
        value = float(kv[key])
    except ValueError:
        raise ConfigError(key, f"not a number: {kv[key]!r}") from None
    if not math.isfinite(value):
        raise ConfigError(key, "must be finite")
    return value


def _get_floats(kv: dict, key: str, n: int) -> list[float]:
    parts = [p for p in kv[key].replace(",", " ").split() if p]
    if len(parts) != n:
        raise ConfigError(key, f"expected {n} numbers, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise ConfigError(key, f"not a number list: {kv[key]!r}") from None


def _parse_selection(kv: dict) -> NVConfiguration | None:
    sel = kv.get("selection", "ensemble").lower()
    if sel == "ensemble":
        return None
    parts = sel.split(":")
    if len(parts) != 3 or parts[0] != "single":
        raise ConfigError("selection", "expected 'ensemble' or 'single:<nv1..nv4>:<nv|vn>'")
    try:
        orientation = Orientation[parts[1].upper()]
        polarity = Polarity[parts[2].upper()]
    except KeyError:
        raise ConfigError("selection", f"unknown orientation/polarity in {sel!r}") from None
    return NVConfiguration(orientation, polarity, weight=1.0)


def scene_from_config(text: str) -> tuple[Scene, dict[str, str]]:
    """Build a Scene from config text; returns (scene, raw key/value map)."""
    kv = parse_key_values(text)
    for key in _REQUIRED_KEYS:
        if key not in kv:
            raise ConfigError(key, "missing required key")

    def angle(key, default=None):
        return math.radians(_get_float(kv, key, default))

    b = FieldSpec(_get_float(kv, "b_magnitude_gauss"), angle("b_theta_deg"),
                  angle("b_phi_deg"), kv.get("b_frame", "lab").lower())
    e = FieldSpec(_get_float(kv, "e_magnitude_v_per_m"), angle("e_theta_deg"),
                  angle("e_phi_deg"), kv.get("e_frame", "lab").lower())

    mode = kv["mw_mode"].lower()
    if mode == MWDrive.COMPLEX:
        comps = tuple(complex(_get_float(kv, f"mw_b{ax}_re", 0.0),
                              _get_float(kv, f"mw_b{ax}_im", 0.0)) for ax in "xyz")
        drive = DriveSpec(mode=mode, components=comps, frame=kv.get("mw_frame", "lab").lower())
    elif mode in (MWDrive.LINEAR, MWDrive.UNPOLARIZED):
        drive = DriveSpec(mode=mode, theta=angle("mw_theta_deg", 90.0),
                          phi=angle("mw_phi_deg", 0.0),
                          frame=kv.get("mw_frame", "lab").lower())
    else:
        raise ConfigError("mw_mode", f"expected linear|unpolarized|complex, got {mode!r}")

    linewidth = _get_float(kv, "linewidth_mhz")
    if linewidth <= 0:
        raise ConfigError("linewidth_mhz", "must be > 0")
    step = _get_float(kv, "grid_step_mhz", linewidth / 10.0)
    if step <= 0:
        raise ConfigError("grid_step_mhz", "must be > 0")
    try:
        grid = GridSpec(_get_float(kv, "grid_min_mhz"), _get_float(kv, "grid_max_mhz"), step)
    except InvalidInputError as exc:
        raise ConfigError("grid_min_mhz/grid_max_mhz", str(exc)) from None

    if "weights" in kv:
        weights = _get_floats(kv, "weights", 8)
        if any(w < 0 for w in weights):
            raise ConfigError("weights", "must be >= 0")
        total = sum(weights)
        if total <= 0:
            raise ConfigError("weights", "must have positive sum")
        weights = tuple(w / total for w in weights)
    else:
        weights = tuple([0.125] * 8)

    overrides = {}
    for key, name in _CONSTANT_KEYS.items():
        if key in kv:
            overrides[name] = _get_float(kv, key)
    constants = dataclasses.replace(DEFAULT_CONSTANTS, **overrides) if overrides \
        else DEFAULT_CONSTANTS

    pre_rotation = None
    if "pre_rotation" in kv:
        pre_rotation = tuple(_get_floats(kv, "pre_rotation", 9))
        r = np.array(pre_rotation).reshape(3, 3)
        if np.abs(r @ r.T - np.eye(3)).max() > 1e-9:
            raise ConfigError("pre_rotation", "matrix is not orthogonal")

    delta_e = _get_float(kv, "delta_e_v_per_m", 1e5)
    if delta_e <= 0:
        raise ConfigError("delta_e_v_per_m", "must be > 0")

    try:
        scene = Scene(b=b, e=e, drive=drive, linewidth=linewidth, grid=grid,
                      weights=weights, selection=_parse_selection(kv),
                      constants=constants, delta_e=delta_e, pre_rotation=pre_rotation)
    except InvalidInputError as exc:
        raise ConfigError("scene", str(exc)) from None
    return scene, kv


def load_scene(path: str) -> tuple[Scene, dict[str, str]]:
    with open(path, "r", encoding="utf-8") as fh:
        return scene_from_config(fh.read())
