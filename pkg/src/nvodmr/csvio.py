"""Deterministic CSV writers/readers shared by CLI and figure tooling.

Every output starts with a provenance block of ``# config: key = value``
lines echoing the numeric inputs, then a fixed header row.  Numbers are
written with 15 significant digits, decimal point '.', LF line endings, so
identical inputs give byte-identical files.
"""
from __future__ import annotations

import numpy as np

from .errors import FormatError

SPECTRUM_HEADER = "frequency_mhz,strength"
SENSITIVITY_HEADER = "frequency_mhz,ds"
SWEEP_HEADER = "param_value,freq_of_max,ds_max,freq_of_min,ds_min"
SCAN_HEADER = "phi_mw_deg,strength"
REPORT_HEADER = "key,value"


def _fmt(x) -> str:
    return format(float(x), ".15g")


def _config_block(config: dict | None) -> list[str]:
    if not config:
        return []
    return [f"# config: {key} = {config[key]}" for key in sorted(config)]


def write_table(path: str, header: str, rows, config: dict | None = None) -> None:
    lines = _config_block(config)
    lines.append(header)
    ncols = len(header.split(","))
    for row in rows:
        if len(row) != ncols:
            raise FormatError(f"row has {len(row)} fields, header {header!r} has {ncols}")
        lines.append(",".join(field if isinstance(field, str) else _fmt(field)
                              for field in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_spectrum(path: str, grid, values, config: dict | None = None,
                   header: str = SPECTRUM_HEADER) -> None:
    write_table(path, header, zip(grid, values), config)


def read_table(path: str, expected_header: str) -> tuple[list[list[str]], dict[str, str]]:
    """Rows (as string fields) plus the parsed ``# config:`` block."""
    config: dict[str, str] = {}
    rows: list[list[str]] = []
    header_seen = False
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.startswith("config:") and "=" in body:
                    key, value = body[len("config:"):].split("=", 1)
                    config[key.strip()] = value.strip()
                continue
            if not header_seen:
                if line.strip() != expected_header:
                    raise FormatError(
                        f"{path}: expected header {expected_header!r}, found {line.strip()!r}")
                header_seen = True
                continue
            rows.append([f.strip() for f in line.split(",")])
    if not header_seen:
        raise FormatError(f"{path}: empty file; expected header {expected_header!r}")
    return rows, config


def read_columns(path: str, expected_header: str) -> tuple[np.ndarray, dict[str, str]]:
    """Numeric table as a (nrows, ncols) array plus the config block."""
    rows, config = read_table(path, expected_header)
    if not rows:
        raise FormatError(f"{path}: no data rows under header {expected_header!r}")
    try:
        data = np.array([[float(f) for f in row] for row in rows])
    except ValueError as exc:
        raise FormatError(f"{path}: non-numeric field ({exc})") from None
    ncols = len(expected_header.split(","))
    if data.shape[1] != ncols:
        raise FormatError(f"{path}: expected {ncols} columns, found {data.shape[1]}")
    return data, config
