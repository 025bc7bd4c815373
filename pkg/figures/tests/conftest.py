"""Fixture data for the figure tests.

The simulation package is exercised strictly through its public command
line (``python -m nvodmr.cli``) so these tests double as a check that the
two packages only share the documented file formats.
"""
import subprocess
import sys

import pytest

TRIPLET = """
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
"""

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
mw_phi_deg = {phi}
mw_frame = nv1
linewidth_mhz = 0.3
grid_min_mhz = 2862.0
grid_max_mhz = 2878.0
selection = single:nv1:nv
"""

ENSEMBLE_RESOLVED = """
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
"""

FAMILY_STARK = """
b_magnitude_gauss = 20.0
b_theta_deg = 90.0
b_phi_deg = 0.0
b_frame = nv1
e_magnitude_v_per_m = 1e7
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
mw_mode = unpolarized
mw_theta_deg = 0.0
mw_phi_deg = 0.0
mw_frame = nv1
linewidth_mhz = 1.0
grid_min_mhz = 2840.0
grid_max_mhz = 2900.0
grid_step_mhz = 0.2
selection = single:nv1:nv
"""

TWO_AXIS_CFG = """
b_magnitude_gauss = 20.0
b_theta_deg = 45.0
b_phi_deg = 90.0
e_magnitude_v_per_m = 50249378.1056044
e_theta_deg = 107.35775354279127
e_phi_deg = 18.43494882292201
mw_mode = linear
mw_theta_deg = 90.0
mw_phi_deg = 0.0
linewidth_mhz = 1.0
grid_min_mhz = 2840.0
grid_max_mhz = 2900.0
scan_frequency_mhz = 2862.6
"""


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "nvodmr.cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode == 0, f"CLI failed: {proc.stderr}"


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("csv_fixtures")

    def cfg(name, text):
        path = root / f"{name}.cfg"
        path.write_text(text)
        return str(path)

    run_cli("spectrum", "--config", cfg("triplet_zero_field", TRIPLET),
            "--out", str(root / "triplet_zero_field.csv"), "--quiet")
    for phi, tag in ((0.0, "phi0"), (90.0, "phi90")):
        run_cli("spectrum", "--config", cfg(f"branch_swap_{tag}", BRANCH_SWAP.format(phi=phi)),
                "--out", str(root / f"branch_swap_{tag}.csv"), "--quiet")
    run_cli("spectrum", "--config", cfg("ensemble_resolved", ENSEMBLE_RESOLVED),
            "--out", str(root / "ensemble_resolved.csv"), "--quiet")
    for polarity in ("nv", "vn"):
        run_cli("spectrum", "--config", cfg(f"family_stark_{polarity}",
                                            FAMILY_STARK.format(polarity=polarity)),
                "--out", str(root / f"family_stark_{polarity}.csv"), "--quiet")
    run_cli("sweep", "--config", cfg("sensitivity", SENSITIVITY_CFG), "--param", "b_magnitude",
            "--range", "10:60:10", "--out", str(root / "sensitivity_sweep.csv"),
            "--spectra-dir", str(root / "sensitivity_spectra"), "--quiet")
    run_cli("sweep", "--config", cfg("misalignment", SENSITIVITY_CFG.replace(
        "b_magnitude_gauss = 20.0", "b_magnitude_gauss = 60.0")),
        "--param", "b_misalignment", "--range=-6:6:3",
        "--out", str(root / "misalignment_sweep.csv"), "--quiet")
    run_cli("spectrum", "--config", cfg("two_axis_spectrum", TWO_AXIS_CFG),
            "--out", str(root / "two_axis_spectrum.csv"), "--quiet")
    run_cli("polarization-scan", "--config", cfg("two_axis_scan", TWO_AXIS_CFG), "--range", "0:180:5",
            "--out", str(root / "two_axis_scan.csv"), "--quiet")
    return root
