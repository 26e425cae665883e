"""Numerical checks for harmonic maps of the disk and ball."""

from ._hmlab import (
    ClaimReport,
    DiskHarmonicMap,
    DiskScenario,
    PolarGrid,
    Error,
    Verdict,
    certify,
    claim_catalog,
    ellipse_scenario,
    grid_csv,
    hall_quantities,
    homotopy_trace,
    identity_scenario,
    mobius_derivative,
    polynomial_scenario,
    run_scenario_file,
    self_map_gallery,
)

__all__ = [
    "ClaimReport",
    "DiskHarmonicMap",
    "DiskScenario",
    "PolarGrid",
    "Error",
    "Verdict",
    "certify",
    "claim_catalog",
    "ellipse_scenario",
    "grid_csv",
    "hall_quantities",
    "homotopy_trace",
    "identity_scenario",
    "mobius_derivative",
    "polynomial_scenario",
    "run_scenario_file",
    "self_map_gallery",
]
