#!/usr/bin/env python3
"""Shim so `python figures/render_map.py ...` works without installing the package."""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from nvodmr_figures.render import map_main

if __name__ == "__main__":
    sys.exit(map_main())
