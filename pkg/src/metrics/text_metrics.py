"""
src/metrics/text_metrics.py

Métricas de qualidade por geração, calculadas a partir de entradas brutas:

- `diversity`: produto das taxas de n-gramas únicos (n = 2, 3, 4).
- `coherence`: média das log-probabilidades (log natural) do texto gerado,
  condicionadas ao prompt por um modelo externo.
- `perplexity`: exp(-média das log-probabilidades).

Todas as funções são puras. O modelo que produz as log-probabilidades fica
fora deste pacote; aqui só consumimos os números.
"""

import math
from typing import Hashable, Iterable, Sequence, Tuple

import numpy as np

from src.errors import EmptySequence, NonFiniteValue, SequenceTooShort

DIVERSITY_ORDERS: Tuple[int, ...] = (2, 3, 4)


def ngrams(tokens: Sequence[Hashable], n: int) -> list:
    """Lista os n-gramas contíguos (tuplas) de uma sequência."""
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


def diversity(tokens: Sequence[Hashable], orders: Iterable[int] = DIVERSITY_ORDERS) -> float:
    """
    Calcula a diversidade de uma continuação.

    DIV = prod_n |n-gramas únicos| / |n-gramas totais|, com
    |n-gramas totais| = L - n + 1.

    Args:
        tokens: Sequência de tokens (símbolos comparados por igualdade exata).
        orders: Ordens de n-grama consideradas (padrão 2, 3 e 4).

    Returns:
        float: Valor em [0, 1]; 1.0 quando nenhum n-grama se repete.

    Raises:
        SequenceTooShort: Se a sequência não contém ao menos um n-grama
            da maior ordem pedida.
    """
    orders = tuple(orders)
    min_length = max(orders) + 1
    if len(tokens) < min_length:
        raise SequenceTooShort(
            f"Diversidade exige ao menos {min_length} tokens, recebido {len(tokens)}"
        )

    value = 1.0
    for n in orders:
        grams = ngrams(tokens, n)
        value *= len(set(grams)) / len(grams)
    return value


def validate_logprobs(logprobs: Sequence[float]) -> np.ndarray:
    """Converte e valida log-probabilidades: não vazias, finitas e <= 0."""
    values = np.asarray(logprobs, dtype=np.float64)
    if values.ndim != 1:
        raise NonFiniteValue("Log-probabilidades devem formar uma sequência unidimensional")
    if values.size == 0:
        raise EmptySequence("Sequência de log-probabilidades vazia")
    if not np.all(np.isfinite(values)):
        raise NonFiniteValue("Log-probabilidades contêm valores não finitos")
    if np.any(values > 0.0):
        raise NonFiniteValue("Log-probabilidades devem ser <= 0")
    return values


def coherence(logprobs: Sequence[float]) -> float:
    """Média aritmética das log-probabilidades da continuação."""
    return float(np.mean(validate_logprobs(logprobs)))


def perplexity(logprobs: Sequence[float]) -> float:
    """Perplexidade da geração: exp(-coherence) na mesma sequência."""
    return math.exp(-coherence(logprobs))


def score_generation(tokens: Sequence[Hashable], logprobs: Sequence[float]) -> dict:
    """
    Calcula as três métricas de uma geração.

    Args:
        tokens: Tokens da continuação gerada.
        logprobs: Log-probabilidades dos tokens gerados.

    Returns:
        dict: {"coherence": ..., "diversity": ..., "perplexity": ...}
    """
    coh = coherence(logprobs)
    return {
        "coherence": coh,
        "diversity": diversity(tokens),
        "perplexity": math.exp(-coh),
    }
