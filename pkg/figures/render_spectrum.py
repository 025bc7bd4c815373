#!/usr/bin/env python3
"""Shim so `python figures/render_spectrum.py ...` works without installing the package."""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from nvodmr_figures.render import spectrum_main

if __name__ == "__main__":
    sys.exit(spectrum_main())
