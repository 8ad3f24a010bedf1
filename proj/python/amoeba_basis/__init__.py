"""Amoeba bases for zero-dimensional varieties in the complex torus."""

from ._core import (
    AffineForm,
    AmoebaBasis,
    ArrangementPoly,
    SolutionSet,
    basis_length_bound,
    build_basis,
    enumerate_h_tuples,
    fpt_margin,
    fpt_member,
    intersection_margin,
    log_map,
    mixed_volume,
    norm0,
    phase_oracle,
    root_check,
    solve_system,
    verify_basis,
)

__all__ = [
    "AffineForm",
    "AmoebaBasis",
    "ArrangementPoly",
    "SolutionSet",
    "basis_length_bound",
    "build_basis",
    "enumerate_h_tuples",
    "fpt_margin",
    "fpt_member",
    "intersection_margin",
    "log_map",
    "mixed_volume",
    "norm0",
    "phase_oracle",
    "root_check",
    "solve_system",
    "verify_basis",
]
