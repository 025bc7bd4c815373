"""ODMR transition-strength simulation, E-field sensitivity maps and vector
electrometry for single NV centers and NV ensembles in diamond."""

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .electrometry import (OrientationMeasurement, ReconstructedField, TransverseProjection,
                           extract_phi_e, extract_splitting, find_doublet, fit_projection,
                           invert_splitting, measure_orientation, polarization_scan,
                           reconstruct_vector, vector_electrometry)
from .errors import (ConfigError, ExtractionError, FormatError, GeometryError,
                     InvalidInputError, NumericError, ValidityRangeWarning)
from .fields import FieldVector
from .geometry import (NVConfiguration, Orientation, Polarity, all_configurations, axis_of,
                       lab_to_nv, nv_to_lab, sensitive_orientations, transform_for)
from .hamiltonian import (EigenSystem, SpinSystem, basis_index, build_electronic, build_total,
                          diagonalize)
from .scene import DriveSpec, FieldSpec, Scene, load_scene, scene_from_config
from .sensing import (SensitivitySpectrum, SweepResult, polarization_branch_weights,
                      sensitivity_spectrum, sweep, transverse_transition_frequencies)
from .spectrum import (GridSpec, MWDrive, Spectrum, TransitionLine, broaden, config_lines,
                       ensemble_spectrum, lines_value_at, local_maxima, lorentzian, refine_peak,
                       single_config_spectrum, transition_lines)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
