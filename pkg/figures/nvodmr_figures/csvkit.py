"""Readers for the nvodmr CSV formats.

This package only consumes the documented file interfaces of the simulation
CLI; it never imports the simulation code. Schema problems raise
``SchemaError`` with the expected header named, so a mismatched file is
diagnosed rather than mis-plotted.
"""
from __future__ import annotations

import os

import numpy as np

SPECTRUM_HEADER = "frequency_mhz,strength"
SENSITIVITY_HEADER = "frequency_mhz,ds"
SWEEP_HEADER = "param_value,freq_of_max,ds_max,freq_of_min,ds_min"
SCAN_HEADER = "phi_mw_deg,strength"

# any two-column curve the CLI emits may be line-plotted
CURVE_HEADERS = (SPECTRUM_HEADER, SENSITIVITY_HEADER, SCAN_HEADER)


class SchemaError(ValueError):
    """Input file does not match the expected CSV schema."""


def read_numeric_csv(path: str, expected_headers) -> tuple[str, np.ndarray, dict]:
    """Return (matched header, data array, config block) for one CSV file.

    ``expected_headers`` is one header string or a tuple of acceptable ones.
    """
    if isinstance(expected_headers, str):
        expected_headers = (expected_headers,)
    config: dict[str, str] = {}
    header = None
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.startswith("config:") and "=" in body:
                    key, value = body[len("config:"):].split("=", 1)
                    config[key.strip()] = value.strip()
                continue
            if header is None:
                if line not in expected_headers:
                    wanted = " or ".join(repr(h) for h in expected_headers)
                    raise SchemaError(f"{path}: expected header {wanted}, found {line!r}")
                header = line
                continue
            try:
                rows.append([float(f) for f in line.split(",")])
            except ValueError:
                raise SchemaError(f"{path}: non-numeric data row {line!r}") from None
    if header is None:
        wanted = " or ".join(repr(h) for h in expected_headers)
        raise SchemaError(f"{path}: empty file; expected header {wanted}")
    if not rows:
        raise SchemaError(f"{path}: no data rows under header {header!r}")
    data = np.array(rows)
    ncols = len(header.split(","))
    if data.shape[1] != ncols:
        raise SchemaError(f"{path}: expected {ncols} columns, found {data.shape[1]}")
    return header, data, config


def read_spectrum_dir(dirname: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stack the per-value spectra a sweep wrote into (params, grid, matrix).

    Each file must carry the spectrum schema plus a ``param_value`` entry in
    its config block; all files must share one frequency grid.
    """
    paths = sorted(os.path.join(dirname, f) for f in os.listdir(dirname)
                   if f.endswith(".csv"))
    if not paths:
        raise SchemaError(f"{dirname}: no CSV files to map")
    params, grid, values = [], None, []
    for path in paths:
        _, data, config = read_numeric_csv(path, SPECTRUM_HEADER)
        if "param_value" not in config:
            raise SchemaError(f"{path}: missing 'param_value' in the config block; "
                              "not a sweep spectrum file")
        params.append(float(config["param_value"]))
        if grid is None:
            grid = data[:, 0]
        elif data.shape[0] != len(grid) or np.any(data[:, 0] != grid):
            raise SchemaError(f"{path}: frequency grid differs from the other files")
        values.append(data[:, 1])
    order = np.argsort(params)
    return np.asarray(params)[order], grid, np.asarray(values)[order]
