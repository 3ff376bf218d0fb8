"""
src/qtext/correlation.py

Correlação de Spearman com postos médios para empates.
"""

from typing import Sequence

import numpy as np
from scipy.stats import spearmanr

from src.errors import ConstantInput, InsufficientPairs, KeyMisalignment

MIN_PAIRS = 3


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """
    Correlação de Spearman (Pearson dos postos médios).

    Raises:
        KeyMisalignment: Se x e y têm tamanhos diferentes.
        InsufficientPairs: Menos de três pares.
        ConstantInput: Algum dos lados é constante.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise KeyMisalignment(f"Sequências de tamanhos diferentes: {x.shape} e {y.shape}")
    if x.size < MIN_PAIRS:
        raise InsufficientPairs(f"Spearman exige ao menos {MIN_PAIRS} pares, recebeu {x.size}")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise ConstantInput("Sequência constante: correlação indefinida")
    rho = spearmanr(x, y).statistic
    return float(np.clip(rho, -1.0, 1.0))
