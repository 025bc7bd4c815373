#!/usr/bin/env python3
"""Generate the bundled example-scene CSV datasets.

Runs the nvodmr CLI for each scene and drops everything under an output
directory (default ./out):

    triplet_zero_field ...      single-center spectra: zero field, axial B,
    branch_swap_*               transverse E, and the two MW polarizations
                                that swap the doublet branches
    ensemble_resolved          ensemble spectrum at B = 18 G with all 24 lines resolved
    family_pure_b/family_stark    NV vs VN family spectra without/with a transverse E field
    sensitivity_single    sensitivity extrema vs B, single center, unpolarized MW
    sensitivity_ensemble  same for the full ensemble with polarized MW
    misalignment           extrema vs bias tilt away from the transverse plane
    two_axis_spectrum/two_axis_scan    two-orientation electrometry: spectrum, polarization scan,
                   and the reconstruction self-test report

Usage: python scripts/make_figure_data.py [--outdir OUT] [--fast]
"""
import argparse
import math
import os
import sys

import numpy as np

from nvodmr import csvio
from nvodmr.cli import main as cli

TWO_AXIS_E = np.array([45e6, 15e6, -15e6])
TWO_AXIS_E_MAG = float(np.linalg.norm(TWO_AXIS_E))

SCENES = {
    "triplet_zero_field": """
b_magnitude_gauss = 0.0
b_theta_deg = 0.0
b_phi_deg = 0.0
e_magnitude_v_per_m = 0.0
e_theta_deg = 0.0
e_phi_deg = 0.0
mw_mode = unpolarized
mw_theta_deg = 0.0
mw_phi_deg = 0.0
mw_frame = nv1
linewidth_mhz = 0.3
grid_min_mhz = 2860.0
grid_max_mhz = 2880.0
selection = single:nv1:nv
""",
    "axial_zeeman": """
b_magnitude_gauss = 1.8
b_theta_deg = 0.0
b_phi_deg = 0.0
b_frame = nv1
e_magnitude_v_per_m = 0.0
e_theta_deg = 0.0
e_phi_deg = 0.0
mw_mode = unpolarized
mw_theta_deg = 0.0
mw_phi_deg = 0.0
mw_frame = nv1
linewidth_mhz = 0.3
grid_min_mhz = 2855.0
grid_max_mhz = 2885.0
selection = single:nv1:nv
""",
    "stark_doublet": """
b_magnitude_gauss = 0.0
b_theta_deg = 0.0
b_phi_deg = 0.0
e_magnitude_v_per_m = 4e7
e_theta_deg = 90.0
e_phi_deg = 0.0
e_frame = nv1
mw_mode = unpolarized
mw_theta_deg = 0.0
mw_phi_deg = 0.0
mw_frame = nv1
linewidth_mhz = 0.3
grid_min_mhz = 2855.0
grid_max_mhz = 2885.0
selection = single:nv1:nv
""",
    "ensemble_resolved": """
b_magnitude_gauss = 18.0
b_theta_deg = 67.0
b_phi_deg = 12.0
e_magnitude_v_per_m = 0.0
e_theta_deg = 0.0
e_phi_deg = 0.0
mw_mode = linear
mw_theta_deg = 0.0
mw_phi_deg = 0.0
linewidth_mhz = 0.3
grid_min_mhz = 2820.0
grid_max_mhz = 2920.0
""",
}

BRANCH_SWAP = """
b_magnitude_gauss = 0.0
b_theta_deg = 0.0
b_phi_deg = 0.0
e_magnitude_v_per_m = 4e6
e_theta_deg = 90.0
e_phi_deg = 0.0
e_frame = nv1
mw_mode = linear
mw_theta_deg = 90.0
mw_phi_deg = {phi_mw}
mw_frame = nv1
linewidth_mhz = 0.3
grid_min_mhz = 2862.0
grid_max_mhz = 2878.0
selection = single:nv1:nv
"""

FAMILY = """
b_magnitude_gauss = 20.0
b_theta_deg = 90.0
b_phi_deg = 0.0
b_frame = nv1
e_magnitude_v_per_m = {e_mag}
e_theta_deg = 90.0
e_phi_deg = 0.0
e_frame = nv1
mw_mode = unpolarized
mw_theta_deg = 0.0
mw_phi_deg = 0.0
mw_frame = nv1
linewidth_mhz = 0.3
grid_min_mhz = 2855.0
grid_max_mhz = 2890.0
selection = single:nv1:{polarity}
"""

SENSITIVITY_CFG = """
b_magnitude_gauss = 20.0
b_theta_deg = 90.0
b_phi_deg = 0.0
b_frame = nv1
e_magnitude_v_per_m = 5e6
e_theta_deg = 90.0
e_phi_deg = 135.0
e_frame = nv1
mw_mode = {mw_mode}
mw_theta_deg = {mw_theta}
mw_phi_deg = {mw_phi}
mw_frame = nv1
linewidth_mhz = 1.0
grid_min_mhz = 2820.0
grid_max_mhz = 2920.0
delta_e_v_per_m = 1e5
{selection}"""

TWO_AXIS_CFG = f"""
b_magnitude_gauss = 20.0
b_theta_deg = 45.0
b_phi_deg = 90.0
e_magnitude_v_per_m = {TWO_AXIS_E_MAG!r}
e_theta_deg = {math.degrees(math.acos(TWO_AXIS_E[2] / TWO_AXIS_E_MAG))!r}
e_phi_deg = {math.degrees(math.atan2(TWO_AXIS_E[1], TWO_AXIS_E[0]))!r}
mw_mode = linear
mw_theta_deg = 90.0
mw_phi_deg = 0.0
linewidth_mhz = 1.0
grid_min_mhz = 2840.0
grid_max_mhz = 2900.0
"""


def run(outdir: str, fast: bool) -> None:
    cfg_dir = os.path.join(outdir, "configs")
    os.makedirs(cfg_dir, exist_ok=True)

    def write_cfg(name, text):
        path = os.path.join(cfg_dir, f"{name}.cfg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        return path

    def spectrum(name, text):
        cli(["spectrum", "--config", write_cfg(name, text),
             "--out", os.path.join(outdir, f"{name}.csv"), "--quiet"])
        print(f"  {name}.csv")

    for name, text in SCENES.items():
        spectrum(name, text)
    for phi_mw, tag in ((0.0, "phi0"), (90.0, "phi90")):
        spectrum(f"branch_swap_{tag}", BRANCH_SWAP.format(phi_mw=phi_mw))
    spectrum("family_pure_b_nv", FAMILY.format(e_mag=0.0, polarity="nv"))
    spectrum("family_pure_b_vn", FAMILY.format(e_mag=0.0, polarity="vn"))
    spectrum("family_stark_nv", FAMILY.format(e_mag=1e7, polarity="nv"))
    spectrum("family_stark_vn", FAMILY.format(e_mag=1e7, polarity="vn"))

    step = "2" if fast else "1"
    single = write_cfg("sensitivity_single", SENSITIVITY_CFG.format(
        mw_mode="unpolarized", mw_theta="0.0", mw_phi="0.0",
        selection="selection = single:nv1:nv\n"))
    cli(["sweep", "--config", single, "--param", "b_magnitude",
         "--range", f"0:70:{step}", "--out", os.path.join(outdir, "sensitivity_single.csv"),
         "--spectra-dir", os.path.join(outdir, "sensitivity_single_spectra"), "--quiet"])
    print("  sensitivity_single.csv (+spectra)")
    ensemble = write_cfg("sensitivity_ensemble", SENSITIVITY_CFG.format(
        mw_mode="linear", mw_theta="90.0", mw_phi="90.0", selection=""))
    cli(["sweep", "--config", ensemble, "--param", "b_magnitude",
         "--range", f"0:70:{step}", "--out", os.path.join(outdir, "sensitivity_ensemble.csv"),
         "--spectra-dir", os.path.join(outdir, "sensitivity_ensemble_spectra"), "--quiet"])
    print("  sensitivity_ensemble.csv (+spectra)")

    misalignment = write_cfg("misalignment", SENSITIVITY_CFG.format(
        mw_mode="linear", mw_theta="90.0", mw_phi="90.0",
        selection="").replace("b_magnitude_gauss = 20.0", "b_magnitude_gauss = 60.0"))
    cli(["sweep", "--config", misalignment, "--param", "b_misalignment",
         f"--range=-10:10:{step}", "--out", os.path.join(outdir, "misalignment.csv"),
         "--spectra-dir", os.path.join(outdir, "misalignment_spectra"), "--quiet"])
    print("  misalignment.csv (+spectra)")

    spectrum("two_axis_spectrum", TWO_AXIS_CFG)
    data, _ = csvio.read_columns(os.path.join(outdir, "two_axis_spectrum.csv"), csvio.SPECTRUM_HEADER)
    grid, values = data[:, 0], data[:, 1]
    peaks = [grid[i] for i in range(1, len(grid) - 1)
             if values[i] > values[i - 1] and values[i] >= values[i + 1]
             and values[i] > 0.1 * values.max()]
    scan_cfg = write_cfg("two_axis_scan", TWO_AXIS_CFG + f"scan_frequency_mhz = {float(min(peaks))!r}\n")
    scan_step = "2" if fast else "0.5"
    cli(["polarization-scan", "--config", scan_cfg, "--range", f"0:180:{scan_step}",
         "--out", os.path.join(outdir, "two_axis_scan.csv"), "--quiet"])
    print("  two_axis_scan.csv")
    cli(["reconstruct", "--config", write_cfg("two_axis_reconstruct", TWO_AXIS_CFG),
         "--out", os.path.join(outdir, "two_axis_reconstruction.csv"), "--self-test", "--quiet"])
    print("  two_axis_reconstruction.csv")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="out")
    parser.add_argument("--fast", action="store_true",
                        help="coarser sweeps for quick smoke runs")
    args = parser.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    print(f"writing datasets to {args.outdir}/")
    run(args.outdir, args.fast)
    sys.exit(0)
