"""Maiorana-McFarland bent functions and their closest bent functions."""

from ._core import (
    SCHEMA_VERSION,
    beta,
    build_mmf,
    expected_m,
    formulas,
    is_bent,
    mf_size,
    mfsp_size,
    near_average,
    near_brute,
    near_count,
    near_mf_size,
    near_realize,
    run,
    sigma,
    table,
)

__all__ = [
    "SCHEMA_VERSION",
    "beta",
    "build_mmf",
    "expected_m",
    "formulas",
    "is_bent",
    "mf_size",
    "mfsp_size",
    "near_average",
    "near_brute",
    "near_count",
    "near_mf_size",
    "near_realize",
    "run",
    "sigma",
    "table",
]
