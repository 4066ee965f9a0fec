from .closed_forms import (
    BISECTION_RATIOS,
    bisection_lower,
    connectivity_upper,
    g_r,
    g_r_attainable,
    g_r_floor,
    q2_minus_asymp,
    q2_plus_exact,
    qr_plus_upper,
    sqrt_r_lower,
    sqrt_r_upper,
    unicyclic_lower,
)
from .expansion import ExpansionProfile, expansion_exponent, expansion_profile, expansion_upper_bound
from .report import REGISTRY, BoundEntry, BoundsReport, closed_forms, graph_bounds, random_regular_bounds
from .spectral import BetaAlpha, beta_alpha_exact, second_eigenvalues, spectral_upper

__all__ = [
    "BISECTION_RATIOS",
    "REGISTRY",
    "BetaAlpha",
    "BoundEntry",
    "BoundsReport",
    "ExpansionProfile",
    "beta_alpha_exact",
    "bisection_lower",
    "closed_forms",
    "connectivity_upper",
    "expansion_exponent",
    "expansion_profile",
    "expansion_upper_bound",
    "g_r",
    "g_r_attainable",
    "g_r_floor",
    "graph_bounds",
    "q2_minus_asymp",
    "q2_plus_exact",
    "qr_plus_upper",
    "random_regular_bounds",
    "second_eigenvalues",
    "spectral_upper",
    "sqrt_r_lower",
    "sqrt_r_upper",
    "unicyclic_lower",
]
