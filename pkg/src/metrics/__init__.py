"""
Modulo de inicialização do pacote metrics.
"""
from typing import List

from .text_metrics import (
    DIVERSITY_ORDERS,
    coherence,
    diversity,
    ngrams,
    perplexity,
    score_generation,
    validate_logprobs,
)

__all__: List[str] = [
    "DIVERSITY_ORDERS",
    "coherence",
    "diversity",
    "ngrams",
    "perplexity",
    "score_generation",
    "validate_logprobs",
]
