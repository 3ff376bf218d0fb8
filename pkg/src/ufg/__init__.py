"""
Modulo de inicialização do pacote ufg.
"""
from typing import List

from .depth import (
    DEFAULT_MAX_SIZE,
    DepthEntry,
    DepthMode,
    DepthResult,
    UfgFamily,
    UfgSet,
    candidate_universe,
    depth,
    depth_over_family,
    enumerate_ufg,
    is_ufg,
    rank_by_depth,
)

__all__: List[str] = [
    "DEFAULT_MAX_SIZE",
    "DepthEntry",
    "DepthMode",
    "DepthResult",
    "UfgFamily",
    "UfgSet",
    "candidate_universe",
    "depth",
    "depth_over_family",
    "enumerate_ufg",
    "is_ufg",
    "rank_by_depth",
]
