"""Laboratory <-> NV body frame conversions for a <100>-cut diamond.

Each of the four crystallographic defect axes gets a right-handed body frame
whose rows (x, y, z) are expressed in lab coordinates; z points from the
nitrogen to the vacancy.  A defect with the opposite nitrogen/vacancy order
(polarity VN) experiences every external field reversed, so its frame
components are the NV ones negated.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, InvalidInputError
from .fields import FieldVector

_S6, _S2, _S3 = np.sqrt(6.0), np.sqrt(2.0), np.sqrt(3.0)


class Orientation(enum.Enum):
    NV1 = 1
    NV2 = 2
    NV3 = 3
    NV4 = 4


class Polarity(enum.Enum):
    NV = 1
    VN = -1


_TRANSFORMS = {
    Orientation.NV1: np.array([
        [-1 / _S6, 1 / _S6, -2 / _S6],
        [-1 / _S2, -1 / _S2, 0.0],
        [-1 / _S3, 1 / _S3, 1 / _S3],
    ]),
    Orientation.NV2: np.array([
        [1 / _S6, 1 / _S6, 2 / _S6],
        [1 / _S2, -1 / _S2, 0.0],
        [1 / _S3, 1 / _S3, -1 / _S3],
    ]),
    Orientation.NV3: np.array([
        [-1 / _S6, -1 / _S6, 2 / _S6],
        [-1 / _S2, 1 / _S2, 0.0],
        [-1 / _S3, -1 / _S3, -1 / _S3],
    ]),
    Orientation.NV4: np.array([
        [1 / _S6, -1 / _S6, -2 / _S6],
        [1 / _S2, 1 / _S2, 0.0],
        [1 / _S3, -1 / _S3, 1 / _S3],
    ]),
}
for _m in _TRANSFORMS.values():
    _m.setflags(write=False)


@dataclass(frozen=True)
class NVConfiguration:
    """One of the eight defect families: 4 axes x {NV, VN}, with a population weight."""

    orientation: Orientation
    polarity: Polarity = Polarity.NV
    weight: float = 0.125

    def __post_init__(self):
        if self.weight < 0:
            raise InvalidInputError(f"configuration weight must be >= 0, got {self.weight}")

    @property
    def label(self) -> str:
        return f"{self.orientation.name}-{self.polarity.name}"


def transform_for(orientation: Orientation) -> np.ndarray:
    """Rotation matrix whose rows are the body-frame axes in lab coordinates."""
    return _TRANSFORMS[orientation]


def axis_of(orientation: Orientation) -> np.ndarray:
    """Defect symmetry axis (body z) as a lab-frame unit vector."""
    return _TRANSFORMS[orientation][2]


def lab_to_nv(v: FieldVector, config: NVConfiguration,
              pre_rotation: np.ndarray | None = None) -> FieldVector:
    """Express a lab-frame vector in the body frame of one configuration.

    ``pre_rotation`` is an optional extra lab-side rotation (for diamond cuts
    other than <100>); it is applied before the orientation transform.
    """
    arr = v.components
    if pre_rotation is not None:
        arr = np.asarray(pre_rotation) @ arr
    out = _TRANSFORMS[config.orientation] @ arr
    if config.polarity is Polarity.VN:
        out = -out
    return FieldVector(out)


def nv_to_lab(v: FieldVector, config: NVConfiguration,
              pre_rotation: np.ndarray | None = None) -> FieldVector:
    """Inverse of :func:`lab_to_nv`."""
    arr = v.components
    if config.polarity is Polarity.VN:
        arr = -arr
    out = _TRANSFORMS[config.orientation].T @ arr
    if pre_rotation is not None:
        out = np.asarray(pre_rotation).T @ out
    return FieldVector(out)


_CONFIG_ORDER = [
    (o, p) for o in (Orientation.NV1, Orientation.NV2, Orientation.NV3, Orientation.NV4)
    for p in (Polarity.NV, Polarity.VN)
]


def all_configurations(weights=None) -> list[NVConfiguration]:
    """The eight configurations in fixed order NV1-NV, NV1-VN, ..., NV4-VN.

    ``weights`` (length 8, same order) must sum to 1; default is equal
    population 1/8 each.
    """
    if weights is None:
        weights = [0.125] * 8
    weights = [float(w) for w in weights]
    if len(weights) != 8:
        raise InvalidInputError(f"need 8 configuration weights, got {len(weights)}")
    if any(w < 0 for w in weights):
        raise InvalidInputError("configuration weights must be >= 0")
    if abs(sum(weights) - 1.0) > 1e-9:
        raise InvalidInputError(f"configuration weights must sum to 1, got {sum(weights)}")
    return [NVConfiguration(o, p, w) for (o, p), w in zip(_CONFIG_ORDER, weights)]


def sensitive_orientations(b_lab: FieldVector, rel_tol: float = 1e-3) -> list[Orientation]:
    """Orientations whose symmetry axis is orthogonal to the bias field.

    Returns the orientations with |B . z_k| < rel_tol * |B|; the two-axis
    electrometry scheme requires exactly two of them.
    """
    b = b_lab.real_components()
    bn = np.linalg.norm(b)
    if bn == 0.0:
        raise GeometryError("bias field is zero; no orientation selection possible")
    return [o for o in Orientation if abs(axis_of(o) @ b) < rel_tol * bn]
