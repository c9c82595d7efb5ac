"""Stable and multistable moving-average path synthesis."""

from ._stabma import (
    ValidationError,
    __version__,
    alpha_norm,
    bound,
    c_alpha,
    estimate_scale,
    estimate_scaling_exponent,
    lalpha_distance,
    optimal_Omega,
    sas_stream,
    synthesize,
    synthesize_multistable,
)

__all__ = [
    "ValidationError",
    "__version__",
    "alpha_norm",
    "bound",
    "c_alpha",
    "estimate_scale",
    "estimate_scaling_exponent",
    "lalpha_distance",
    "optimal_Omega",
    "sas_stream",
    "synthesize",
    "synthesize_multistable",
]
