"""P3P solution counting on inscribed-angle toroids.

Thin Python layer over the C++ core. Report-style calls return plain dicts
with the same field names as the ``p3p`` command-line tool.
"""

import json

from ._core import (
    P3PError,
    Triangle,
    ViewAngles,
    grunert_coefficients,
    make_triangle,
    real_roots,
    subtended_angles,
    toroid_signed_excess,
)
from . import _core

__all__ = [
    "P3PError",
    "Triangle",
    "ViewAngles",
    "classify_region",
    "grunert_coefficients",
    "make_triangle",
    "oracle",
    "real_roots",
    "solve",
    "subtended_angles",
    "sweep",
    "toroid_signed_excess",
    "verify",
]


def solve(triangle, angles, tol=1e-8):
    """Solve the P3P instance; returns the solver report as a dict."""
    return json.loads(_core._solve_json(triangle, angles, tol))


def classify_region(center, triangle):
    """Position of an optical center relative to the six toroids."""
    return json.loads(_core._region_json(center, triangle))


def oracle(triangle, angles, grid=512):
    """Brute-force toroid search compared against the quartic solver."""
    return json.loads(_core._oracle_json(triangle, angles, grid))


def sweep(triangle, start, end, steps=1000, delta=1e-4):
    """Walk a segment of optical centers and report toroid crossings."""
    return json.loads(_core._sweep_json(triangle, start, end, steps, delta))


def verify(triangle, theorem, trials, seed=1):
    """Monte Carlo campaign for one theorem ("1".."5", "lemmas", "signlaw")."""
    return json.loads(_core._verify_json(triangle, str(theorem), trials, seed))
