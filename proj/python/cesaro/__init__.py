"""Cesaro-like operators induced by radial measures on [0, 1)."""

from ._core import (
    Measure,
    QuadratureError,
    SpecError,
    besov_norm,
    bloch_norm,
    cesaro_like,
    cesaro_like_integral,
    classify,
    log_one_over_one_minus_z,
    lower_bound_statistic,
    mean_lipschitz_norm,
    test_function,
    verify,
)

__all__ = [
    "Measure",
    "QuadratureError",
    "SpecError",
    "besov_norm",
    "bloch_norm",
    "cesaro_like",
    "cesaro_like_integral",
    "classify",
    "log_one_over_one_minus_z",
    "lower_bound_statistic",
    "mean_lipschitz_norm",
    "test_function",
    "verify",
]
