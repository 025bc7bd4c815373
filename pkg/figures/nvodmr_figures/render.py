"""Render nvodmr CSV files to image files.

Three plot kinds, also exposed as command-line scripts:

    render_spectrum <csv> [<csv> ...] <png>   line plot, curves overlaid
    render_map <dir> <png>                    heatmap of a sweep's spectra
    render_extrema <csv> <png>                sensitivity extrema vs parameter

Rendering only reads the inputs; re-rendering overwrites the image and is
idempotent.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from . import csvkit  # noqa: E402

_AXIS_LABELS = {
    csvkit.SPECTRUM_HEADER: ("MW frequency (MHz)", "transition strength"),
    csvkit.SENSITIVITY_HEADER: ("MW frequency (MHz)", "dS ((V/m)$^{-1}$)"),
    csvkit.SCAN_HEADER: (r"$\phi_{MW}$ (deg)", "transition strength"),
}


@dataclass(frozen=True)
class PlotSpec:
    """What to read, how to draw it, where to write the image."""

    inputs: tuple[str, ...]
    kind: str                      # "line" | "heatmap" | "extrema-overlay"
    output: str
    title: str = ""
    labels: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in ("line", "heatmap", "extrema-overlay"):
            raise ValueError(f"unknown plot kind {self.kind!r}")
        if not self.inputs:
            raise ValueError("need at least one input path")


def _render_line(spec: PlotSpec, ax) -> None:
    header = None
    for n, path in enumerate(spec.inputs):
        found, data, config = csvkit.read_numeric_csv(path, csvkit.CURVE_HEADERS)
        if header is None:
            header = found
        elif found != header:
            raise csvkit.SchemaError(
                f"{path}: header {found!r} differs from the first input ({header!r})")
        label = spec.labels[n] if n < len(spec.labels) else path.rsplit("/", 1)[-1]
        ax.plot(data[:, 0], data[:, 1], lw=1.2, label=label)
    xlabel, ylabel = _AXIS_LABELS[header]
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if len(spec.inputs) > 1:
        ax.legend(fontsize=8)


def _render_heatmap(spec: PlotSpec, ax) -> None:
    params, grid, values = csvkit.read_spectrum_dir(spec.inputs[0])
    mesh = ax.pcolormesh(grid, params, values, shading="nearest", cmap="inferno")
    ax.set_xlabel("MW frequency (MHz)")
    ax.set_ylabel("sweep parameter")
    plt.colorbar(mesh, ax=ax, label="transition strength")


def _render_extrema(spec: PlotSpec, ax) -> None:
    _, data, config = csvkit.read_numeric_csv(spec.inputs[0], csvkit.SWEEP_HEADER)
    param = config.get("param", "sweep parameter")
    ax.plot(data[:, 0], data[:, 2], "-", lw=1.4, label="max dS")
    ax.plot(data[:, 0], -data[:, 4], "--", lw=1.4, label="|min dS|")
    ax.set_xlabel(param)
    ax.set_ylabel("sensitivity extrema ((V/m)$^{-1}$)")
    ax.legend(fontsize=8)


_KIND_RENDERERS = {
    "line": _render_line,
    "heatmap": _render_heatmap,
    "extrema-overlay": _render_extrema,
}


def render(spec: PlotSpec) -> str:
    """Draw the requested plot and write the image; returns the output path.

    All input parsing happens before the file is written, so a schema error
    never leaves a truncated or zero-byte image behind.
    """
    fig, ax = plt.subplots(figsize=(6.4, 4.0), dpi=130)
    try:
        _KIND_RENDERERS[spec.kind](spec, ax)
        if spec.title:
            ax.set_title(spec.title)
        fig.tight_layout()
        fig.savefig(spec.output)
    finally:
        plt.close(fig)
    return spec.output


def _script(kind: str, argv, usage: str) -> int:
    if len(argv) < 2:
        print(f"usage: {usage}", file=sys.stderr)
        return 2
    try:
        render(PlotSpec(inputs=tuple(argv[:-1]), kind=kind, output=argv[-1]))
    except (csvkit.SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def spectrum_main(argv=None) -> int:
    return _script("line", sys.argv[1:] if argv is None else argv,
                   "render_spectrum <csv> [<csv> ...] <png>")


def map_main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print("usage: render_map <dir> <png>", file=sys.stderr)
        return 2
    return _script("heatmap", argv, "render_map <dir> <png>")


def extrema_main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print("usage: render_extrema <csv> <png>", file=sys.stderr)
        return 2
    return _script("extrema-overlay", argv, "render_extrema <csv> <png>")
