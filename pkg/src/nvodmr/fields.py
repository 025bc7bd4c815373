"""3-vectors for static and microwave fields, with polar constructors.

Angle conventions: ``theta`` is the polar angle from the frame +z axis,
``phi`` the azimuth measured from +x toward +y (counterclockwise about z).
Components may be complex for microwave polarization vectors only; static
fields must be real.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class FieldVector:
    """Immutable 3-vector; build via :meth:`cartesian` or :meth:`polar`."""

    components: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        arr = np.asarray(self.components)
        if arr.shape != (3,):
            raise InvalidInputError(f"field vector needs 3 components, got shape {arr.shape}")
        if not np.all(np.isfinite(arr.view(float) if arr.dtype == complex else arr)):
            raise InvalidInputError("field vector has non-finite components")
        arr = arr.astype(complex if np.iscomplexobj(arr) else float)
        arr.setflags(write=False)
        object.__setattr__(self, "components", arr)

    @classmethod
    def cartesian(cls, vx, vy, vz) -> "FieldVector":
        return cls(np.array([vx, vy, vz]))

    @classmethod
    def polar(cls, magnitude: float, theta: float, phi: float) -> "FieldVector":
        """Real vector of given magnitude, polar angle theta and azimuth phi."""
        if magnitude < 0:
            raise InvalidInputError(f"magnitude must be >= 0, got {magnitude}")
        st = np.sin(theta)
        return cls(magnitude * np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)]))

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.components)

    @property
    def x(self):
        return self.components[0]

    @property
    def y(self):
        return self.components[1]

    @property
    def z(self):
        return self.components[2]

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.components))

    @property
    def theta(self) -> float:
        """Polar angle, radians (real vectors)."""
        self._require_real()
        r = self.magnitude
        if r == 0.0:
            return 0.0
        return float(np.arccos(np.clip(self.components[2].real / r, -1.0, 1.0)))

    @property
    def phi(self) -> float:
        """Azimuth from +x toward +y, radians (real vectors)."""
        self._require_real()
        return float(np.arctan2(self.components[1].real, self.components[0].real))

    @property
    def transverse_magnitude(self) -> float:
        """Norm of the (x, y) projection."""
        return float(np.hypot(abs(self.components[0]), abs(self.components[1])))

    def real_components(self) -> np.ndarray:
        self._require_real()
        return self.components.real.copy()

    def normalized(self) -> "FieldVector":
        n = self.magnitude
        if n == 0.0:
            raise InvalidInputError("cannot normalize the zero vector")
        return FieldVector(self.components / n)

    def scaled(self, factor: float) -> "FieldVector":
        return FieldVector(self.components * factor)

    def _require_real(self):
        if self.is_complex and np.any(self.components.imag != 0.0):
            raise InvalidInputError("operation defined for real field vectors only")

    def __iter__(self):
        return iter(self.components)
