"""
src/qtext/normalization.py

Normalização min-max das métricas para o Q*Text.

Perplexidade (menor é melhor) recebe a normalização inversa
(p_max - p) / (p_max - p_min); coerência e diversidade recebem a min-max usual.
Os limites ficam registrados em `NormalizationBounds` para reaplicação a
novos dados, com clamp em [0, 1] e contagem dos valores grampeados.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.dominance import DominanceConfig, Direction, MetricRecord
from src.errors import DegenerateSpread, MismatchedMetrics

logger = logging.getLogger(__name__)

# ordem dos índices 1..3 da fórmula
QTEXT_METRICS: Tuple[str, ...] = ("perplexity", "coherence", "diversity")


@dataclass(frozen=True)
class MetricBounds:
    minimum: float
    maximum: float
    inverted: bool = False

    def scale(self, values: np.ndarray) -> np.ndarray:
        spread = self.maximum - self.minimum
        if self.inverted:
            return (self.maximum - values) / spread
        return (values - self.minimum) / spread


@dataclass(frozen=True)
class NormalizationBounds:
    """Limites por métrica e proveniência (conjunto de dados, timestamp)."""

    metrics: Dict[str, MetricBounds]
    dataset: str = ""
    created_at: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "created_at": self.created_at,
            "metrics": {
                name: {"min": b.minimum, "max": b.maximum, "inverted": b.inverted}
                for name, b in sorted(self.metrics.items())
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NormalizationBounds":
        metrics = {
            name: MetricBounds(float(b["min"]), float(b["max"]), bool(b.get("inverted", False)))
            for name, b in data["metrics"].items()
        }
        for name, b in metrics.items():
            if not b.maximum > b.minimum:
                raise DegenerateSpread(f"Limites degenerados para {name!r}: max <= min")
        return cls(metrics, data.get("dataset", ""), data.get("created_at"))


def _matrix(records: Sequence[MetricRecord], names: Sequence[str]) -> np.ndarray:
    try:
        return np.array([[r.values[name] for name in names] for r in records], dtype=np.float64)
    except KeyError as e:
        raise MismatchedMetrics(f"Registro sem a métrica {e}") from e


def _rebuild(records: Sequence[MetricRecord], names: Sequence[str], matrix: np.ndarray) -> List[MetricRecord]:
    return [
        MetricRecord(r.instance_id, r.method_id, {name: float(v) for name, v in zip(names, row)})
        for r, row in zip(records, matrix)
    ]


def normalize(
    records: Sequence[MetricRecord],
    config: DominanceConfig = DominanceConfig(),
    dataset: str = "",
    created_at: Optional[str] = None,
) -> Tuple[List[MetricRecord], NormalizationBounds]:
    """
    Normaliza as métricas do conjunto para [0, 1], maior = melhor.

    Args:
        records: Registros brutos.
        config: Sentidos das métricas; LOWER_IS_BETTER recebe a inversão.
        dataset: Identificador do conjunto, guardado como proveniência.
        created_at: Timestamp opcional da proveniência.

    Returns:
        Tupla (registros normalizados, limites).

    Raises:
        DegenerateSpread: Se alguma métrica é constante no conjunto.
    """
    names = config.metric_names
    matrix = _matrix(records, names)
    if matrix.size == 0:
        raise DegenerateSpread("Conjunto vazio: limites indefinidos")

    metrics = {}
    for column, direction in enumerate(config.directions):
        low, high = float(matrix[:, column].min()), float(matrix[:, column].max())
        if not high > low:
            raise DegenerateSpread(f"Métrica {direction.name!r} constante no conjunto ({low})")
        metrics[direction.name] = MetricBounds(low, high, direction.direction is Direction.LOWER_IS_BETTER)

    bounds = NormalizationBounds(metrics, dataset, created_at)
    normalized, _ = apply_bounds(records, bounds)
    return normalized, bounds


def apply_bounds(records: Sequence[MetricRecord], bounds: NormalizationBounds) -> Tuple[List[MetricRecord], int]:
    """
    Reaplica limites armazenados, grampeando em [0, 1].

    Returns:
        Tupla (registros normalizados, número de valores grampeados).
    """
    if not records:
        return [], 0
    names = sorted(bounds.metrics)
    matrix = _matrix(records, names)
    scaled = np.column_stack([bounds.metrics[name].scale(matrix[:, k]) for k, name in enumerate(names)])
    clamped = int(np.count_nonzero((scaled < 0.0) | (scaled > 1.0)))
    if clamped:
        logger.warning(f"{clamped} valores fora dos limites de normalização foram grampeados em [0, 1]")
    return _rebuild(records, names, np.clip(scaled, 0.0, 1.0)), clamped
