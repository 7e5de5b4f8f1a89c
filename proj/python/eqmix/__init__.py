"""Mixing-time bounds for random walks via equitable partitions."""

from ._core import (
    GroupSpec,
    SoundnessViolation,
    annihilator,
    audit_group,
    bound_code,
    bound_group,
    coarsest_equitable_refinement,
    convolve,
    dual_weight_enumerator,
    fourier,
    group_spectrum,
    noise,
    poisson_check,
    run_cli,
    subgroup,
)

__all__ = [
    "GroupSpec",
    "SoundnessViolation",
    "annihilator",
    "audit_group",
    "bound_code",
    "bound_group",
    "coarsest_equitable_refinement",
    "convolve",
    "dual_weight_enumerator",
    "fourier",
    "group_spectrum",
    "noise",
    "poisson_check",
    "run_cli",
    "subgroup",
]
