from ._moves import OptimizerConfig
from .cycles import (
    GAMMA,
    CostTable,
    exact_cycle,
    exact_two_regular,
    near_extremal_cycle_lengths,
    near_extremal_two_regular,
)
from .louvain import louvain
from .reshuffle import reshuffle

METHODS = {"louvain": louvain, "reshuffle": reshuffle}

__all__ = [
    "GAMMA",
    "METHODS",
    "CostTable",
    "OptimizerConfig",
    "exact_cycle",
    "exact_two_regular",
    "louvain",
    "near_extremal_cycle_lengths",
    "near_extremal_two_regular",
    "reshuffle",
]
