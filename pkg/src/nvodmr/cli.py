"""Command-line front end.

Subcommands::

    nvodmr spectrum           --config scene.cfg --out spectrum.csv
    nvodmr sensitivity        --config scene.cfg --out ds.csv
    nvodmr sweep              --config scene.cfg --param b_magnitude --range 0:70:1 \
                              --out sweep.csv [--spectra-dir DIR]
    nvodmr polarization-scan  --config scene.cfg --range 0:180:1 --out scan.csv
    nvodmr reconstruct        --config scene.cfg --out report.csv [--self-test]

Config files are flat ``key = value`` text with angles in degrees (see
README for the key reference).  Angle-valued sweep parameters
(b_misalignment, phi_b, phi_mw) also take their ranges in degrees.
Exit codes: 0 success, 2 configuration/format errors, 1 runtime failures.
"""
from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import csvio
from .electrometry import (OrientationMeasurement, bias_geometry_report, fit_projection,
                           polarization_scan, reconstruct_vector, vector_electrometry)
from .errors import (ConfigError, ExtractionError, FormatError, GeometryError,
                     InvalidInputError, NumericError)
from .geometry import Orientation, sensitive_orientations
from .scene import load_scene
from .sensing import SWEEP_PARAMETERS, sensitivity_spectrum, sweep

_ANGLE_PARAMETERS = ("b_misalignment", "phi_b", "phi_mw")


def _parse_range(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError("range", f"expected start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ConfigError("range", f"non-numeric range {spec!r}") from None
    if step <= 0:
        raise ConfigError("range", f"step must be > 0, got {step}")
    if stop < start:
        raise ConfigError("range", f"empty range {spec!r}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _echo_config(kv: dict, extra: dict | None = None) -> dict:
    out = dict(kv)
    if extra:
        out.update({k: str(v) for k, v in extra.items()})
    return out


def _cmd_spectrum(args) -> int:
    scene, kv = load_scene(args.config)
    spectrum = scene.spectrum()
    csvio.write_spectrum(args.out, spectrum.grid, spectrum.values, _echo_config(kv))
    if not args.quiet:
        print(f"wrote {args.out}: {len(spectrum.grid)} points, "
              f"peak strength {spectrum.values.max():.6g}")
    return 0


def _cmd_sensitivity(args) -> int:
    scene, kv = load_scene(args.config)
    sens = sensitivity_spectrum(scene)
    csvio.write_spectrum(args.out, sens.grid, sens.ds, _echo_config(kv),
                         header=csvio.SENSITIVITY_HEADER)
    if not args.quiet:
        f1, v1, f2, v2 = sens.extrema()
        print(f"wrote {args.out}: dS max {v1:.6g} at {f1:.3f} MHz, "
              f"min {v2:.6g} at {f2:.3f} MHz")
    return 0


def _cmd_sweep(args) -> int:
    scene, kv = load_scene(args.config)
    if args.param not in SWEEP_PARAMETERS:
        raise ConfigError("param", f"expected one of {SWEEP_PARAMETERS}, got {args.param!r}")
    values = _parse_range(args.range)
    internal = np.radians(values) if args.param in _ANGLE_PARAMETERS else values
    keep = bool(args.spectra_dir)
    result = sweep(scene, args.param, internal, keep_spectra=keep)
    config = _echo_config(kv, {"param": args.param, "range": args.range})
    rows = zip(values, result.freq_of_max, result.ds_max, result.freq_of_min, result.ds_min)
    csvio.write_table(args.out, csvio.SWEEP_HEADER, rows, config)
    if keep:
        os.makedirs(args.spectra_dir, exist_ok=True)
        for value, (spectrum, _) in zip(values, result.spectra):
            name = f"{args.param}_{value:.6g}.csv".replace("-", "m")
            csvio.write_spectrum(
                os.path.join(args.spectra_dir, name), spectrum.grid, spectrum.values,
                _echo_config(config, {"param_value": format(value, '.15g')}))
    if not args.quiet:
        i = int(np.argmax(np.abs(result.ds_max)))
        print(f"wrote {args.out}: {len(values)} sweep points, "
              f"largest dS max {result.ds_max[i]:.6g} at {args.param} = {values[i]:g}")
    return 0


def _kv_float(kv: dict, key: str) -> float:
    try:
        return float(kv[key])
    except ValueError:
        raise ConfigError(key, f"not a number: {kv[key]!r}") from None


def _cmd_scan(args) -> int:
    scene, kv = load_scene(args.config)
    if "scan_frequency_mhz" not in kv:
        raise ConfigError("scan_frequency_mhz", "missing required key for polarization-scan")
    freq = _kv_float(kv, "scan_frequency_mhz")
    degrees = _parse_range(args.range)
    curve = polarization_scan(scene, freq, np.radians(degrees))
    config = _echo_config(kv, {"range": args.range})
    csvio.write_table(args.out, csvio.SCAN_HEADER, zip(degrees, curve), config)
    if not args.quiet:
        print(f"wrote {args.out}: arg-max at phi_mw = {degrees[int(np.argmax(curve))]:.2f} deg")
    return 0


def _orientation_key(kv: dict, key: str) -> Orientation:
    name = kv[key].strip().upper()
    try:
        return Orientation[name]
    except KeyError:
        raise ConfigError(key, f"unknown orientation {kv[key]!r}") from None


def _load_measurement(kv: dict, tag: str, scene, orientation) -> OrientationMeasurement:
    spec_key, scan_key = f"spectrum_csv_{tag}", f"scan_csv_{tag}"
    for key in (spec_key, scan_key):
        if key not in kv:
            raise ConfigError(key, "missing input file key for file-mode reconstruction")
    data, _ = csvio.read_columns(kv[spec_key], csvio.SPECTRUM_HEADER)
    grid, values = data[:, 0], data[:, 1]
    scan, _ = csvio.read_columns(kv[scan_key], csvio.SCAN_HEADER)
    window = (
        _kv_float(kv, f"window_{tag}_min_mhz") if f"window_{tag}_min_mhz" in kv
        else float(grid[0]),
        _kv_float(kv, f"window_{tag}_max_mhz") if f"window_{tag}_max_mhz" in kv
        else float(grid[-1]))
    return OrientationMeasurement(
        orientation=orientation, grid=grid, values=values, window=window,
        scan_phis=np.radians(scan[:, 0]), scan_curve=scan[:, 1],
        scan_theta=scene.drive.theta, scan_frame=scene.drive.frame)


def _cmd_reconstruct(args) -> int:
    scene, kv = load_scene(args.config)
    orientations = sensitive_orientations(scene.b_lab())
    if "orientation_a" in kv and "orientation_b" in kv:
        orientations = [_orientation_key(kv, "orientation_a"),
                        _orientation_key(kv, "orientation_b")]
    elif len(orientations) != 2:
        report = ", ".join(f"{o.name}: {r:.4f}"
                           for o, r in bias_geometry_report(scene.b_lab()).items())
        raise GeometryError("bias field must be orthogonal to exactly two orientations; "
                            f"|B.z_k|/|B| per axis: {report}")

    if args.self_test:
        result = vector_electrometry(scene, orientations)
    else:
        projections = []
        for tag, orientation in zip(("a", "b"), orientations):
            meas = _load_measurement(kv, tag, scene, orientation)
            projections.append(fit_projection(scene, meas))
        result = reconstruct_vector(projections[0], projections[1])

    e = result.e_lab.real_components()
    rows = [("e_x_v_per_m", e[0]), ("e_y_v_per_m", e[1]), ("e_z_v_per_m", e[2]),
            ("line_gap_v_per_m", result.residual)]
    for proj in result.projections:
        name = proj.orientation.name.lower()
        rows += [(f"{name}_e_perp_v_per_m", proj.e_perp),
                 (f"{name}_phi_e_deg", math.degrees(proj.phi_e)),
                 (f"{name}_fit_residual", proj.residual)]
    csvio.write_table(args.out, csvio.REPORT_HEADER, rows,
                      _echo_config(kv, {"self_test": args.self_test}))
    if not args.quiet:
        print(f"wrote {args.out}: E = ({e[0]:.4g}, {e[1]:.4g}, {e[2]:.4g}) V/m, "
              f"line gap {result.residual:.3g} V/m")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nvodmr",
                                     description="NV-center ODMR spectra, E-field "
                                                 "sensitivity and vector electrometry")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_out=True):
        p.add_argument("--config", required=True, help="scene config file (key = value)")
        if needs_out:
            p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument("--quiet", action="store_true", help="suppress the summary line")

    common(sub.add_parser("spectrum", help="transition-strength spectrum CSV"))
    common(sub.add_parser("sensitivity", help="differential sensitivity spectrum CSV"))
    p = sub.add_parser("sweep", help="sensitivity extrema vs a swept parameter")
    common(p)
    p.add_argument("--param", required=True, help=f"one of {SWEEP_PARAMETERS}")
    p.add_argument("--range", required=True, help="start:stop:step (degrees for angles)")
    p.add_argument("--spectra-dir", help="also write one spectrum CSV per sweep value")
    p = sub.add_parser("polarization-scan", help="strength at a fixed frequency vs MW angle")
    common(p)
    p.add_argument("--range", required=True, help="phi_mw range start:stop:step, degrees")
    p = sub.add_parser("reconstruct", help="two-orientation vector electrometry")
    common(p)
    p.add_argument("--self-test", action="store_true",
                   help="simulate the measurement set from the config's E field")
    return parser


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "sensitivity": _cmd_sensitivity,
    "sweep": _cmd_sweep,
    "polarization-scan": _cmd_scan,
    "reconstruct": _cmd_reconstruct,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ConfigError, FormatError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ExtractionError, GeometryError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
