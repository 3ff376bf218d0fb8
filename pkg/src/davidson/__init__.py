"""
Modulo de inicialização do pacote davidson.
"""
from typing import List

from .model import (
    FitConfig,
    WorthTable,
    davidson_probabilities,
    fit,
    preference_probability,
    score_vector,
    simulate_tallies,
)

__all__: List[str] = [
    "FitConfig",
    "WorthTable",
    "davidson_probabilities",
    "fit",
    "preference_probability",
    "score_vector",
    "simulate_tallies",
]
