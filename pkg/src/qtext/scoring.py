"""
src/qtext/scoring.py

Score composto Q*Text:

    Q = sum_i w_i * M_i * P_i(M_i) / sum_i w_i,   P_i(x) = exp(-alpha_i * (x - mu_i)^2)

com M = (perplexidade invertida, coerência, diversidade) normalizadas em [0, 1].
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.dominance import MetricRecord
from src.errors import ConfigError, MismatchedMetrics, OutOfRangeInput

from .normalization import QTEXT_METRICS, NormalizationBounds, apply_bounds

logger = logging.getLogger(__name__)

DEFAULT_PARAMS_PATH = Path(__file__).parent / "data" / "default_params.json"

WEIGHT_BOUNDS = (0.1, 5.0)
TARGET_BOUNDS = (0.0, 1.0)
PENALTY_BOUNDS = (0.1, 10.0)

Triple = Tuple[float, float, float]


@dataclass(frozen=True)
class QTextParams:
    """Os nove parâmetros (pesos, alvos e penalidades), na ordem perplexidade, coerência, diversidade."""

    weights: Triple = (1.0, 1.0, 1.0)
    targets: Triple = (0.5, 0.5, 0.5)
    penalties: Triple = (1.0, 1.0, 1.0)

    def __post_init__(self) -> None:
        for name, values, (low, high) in (
            ("weights", self.weights, WEIGHT_BOUNDS),
            ("targets", self.targets, TARGET_BOUNDS),
            ("penalties", self.penalties, PENALTY_BOUNDS),
        ):
            if len(values) != 3:
                raise ConfigError(f"{name} deve ter 3 valores, recebeu {len(values)}")
            if any(not low <= v <= high for v in values):
                raise OutOfRangeInput(f"{name} fora de [{low}, {high}]: {tuple(values)}")

    def as_vector(self) -> np.ndarray:
        return np.array([*self.weights, *self.targets, *self.penalties], dtype=np.float64)

    @classmethod
    def from_vector(cls, theta: Sequence[float]) -> "QTextParams":
        theta = [float(v) for v in theta]
        return cls(tuple(theta[0:3]), tuple(theta[3:6]), tuple(theta[6:9]))

    def to_dict(self) -> dict:
        return {
            "metrics": list(QTEXT_METRICS),
            "weights": list(self.weights),
            "targets": list(self.targets),
            "penalties": list(self.penalties),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QTextParams":
        try:
            return cls(tuple(data["weights"]), tuple(data["targets"]), tuple(data["penalties"]))
        except KeyError as e:
            raise ConfigError(f"Parâmetros Q*Text sem o campo {e}") from e


THETA_0 = QTextParams()


def parameter_bounds() -> Tuple[np.ndarray, np.ndarray]:
    """Limites inferior e superior do vetor de nove parâmetros."""
    low = np.repeat([WEIGHT_BOUNDS[0], TARGET_BOUNDS[0], PENALTY_BOUNDS[0]], 3)
    high = np.repeat([WEIGHT_BOUNDS[1], TARGET_BOUNDS[1], PENALTY_BOUNDS[1]], 3)
    return low, high


def load_params(path: Optional[Path] = None) -> Tuple[QTextParams, Optional[NormalizationBounds]]:
    """
    Lê um documento de parâmetros; sem caminho, usa o arquivo padrão publicado.

    O documento pode trazer os limites de normalização em "bounds".
    """
    path = Path(path) if path is not None else DEFAULT_PARAMS_PATH
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Não foi possível ler parâmetros de {path}: {e}") from e
    bounds = NormalizationBounds.from_dict(data["bounds"]) if "bounds" in data else None
    return QTextParams.from_dict(data), bounds


def params_document(params: QTextParams, bounds: Optional[NormalizationBounds] = None) -> dict:
    """Documento JSON único com parâmetros e limites de normalização."""
    document = params.to_dict()
    if bounds is not None:
        document["bounds"] = bounds.to_dict()
    return document


def _check_range(m: np.ndarray) -> None:
    if not np.all(np.isfinite(m)) or np.any((m < 0.0) | (m > 1.0)):
        raise OutOfRangeInput(f"Métricas normalizadas devem estar em [0, 1]: {m.tolist()}")


def score_matrix(m: np.ndarray, params: QTextParams) -> np.ndarray:
    """Score de cada linha de uma matriz (n x 3) de métricas normalizadas."""
    m = np.atleast_2d(np.asarray(m, dtype=np.float64))
    _check_range(m)
    w = np.asarray(params.weights)
    mu = np.asarray(params.targets)
    alpha = np.asarray(params.penalties)
    penalty = np.exp(-alpha * (m - mu) ** 2)
    return (m * penalty) @ w / w.sum()


def score(m: Sequence[float], params: QTextParams = THETA_0) -> float:
    """
    Q*Text de um triplo normalizado (perplexidade, coerência, diversidade).

    Raises:
        OutOfRangeInput: Se algum M_i está fora de [0, 1].
    """
    return float(score_matrix(np.asarray(m, dtype=np.float64).reshape(1, 3), params)[0])


def score_gradient(m: Sequence[float], params: QTextParams = THETA_0) -> np.ndarray:
    """Derivada analítica do score em relação a cada M_i."""
    m = np.asarray(m, dtype=np.float64)
    _check_range(m)
    w = np.asarray(params.weights)
    mu = np.asarray(params.targets)
    alpha = np.asarray(params.penalties)
    penalty = np.exp(-alpha * (m - mu) ** 2)
    d_penalty = -2.0 * alpha * (m - mu) * penalty
    return w * (penalty + m * d_penalty) / w.sum()


def metric_matrix(records: Sequence[MetricRecord]) -> np.ndarray:
    """Matriz (n x 3) na ordem perplexidade, coerência, diversidade."""
    try:
        return np.array([[r.values[name] for name in QTEXT_METRICS] for r in records], dtype=np.float64)
    except KeyError as e:
        raise MismatchedMetrics(f"Q*Text exige as métricas {QTEXT_METRICS}; ausente: {e}") from e


@dataclass(frozen=True)
class ScoredRecord:
    instance_id: object
    method_id: str
    score: float

    def to_dict(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "method_id": self.method_id,
            "score": self.score,
            "score_100": 100.0 * self.score,
        }


def score_records(
    records: Sequence[MetricRecord], bounds: NormalizationBounds, params: QTextParams = THETA_0
) -> Tuple[List[ScoredRecord], int]:
    """
    Pontua registros brutos com limites armazenados.

    Returns:
        Tupla (registros pontuados, número de valores grampeados).
    """
    normalized, clamped = apply_bounds(records, bounds)
    if not normalized:
        return [], clamped
    scores = score_matrix(metric_matrix(normalized), params)
    scored = [ScoredRecord(r.instance_id, r.method_id, float(s)) for r, s in zip(normalized, scores)]
    logger.info(f"{len(scored)} registros pontuados com Q*Text (grampeados: {clamped})")
    return scored, clamped


GROUP_KEYS = ("method", "model", "strategy")


def group_means(scores: Sequence[ScoredRecord], key: str = "method") -> Dict[str, float]:
    """
    Média do Q*Text por método, modelo ou estratégia.

    Os níveis modelo/estratégia vêm do id composto "Modelo|Estratégia|Parâmetros";
    ids sem separador contam como o próprio modelo e estratégia.
    """
    if key not in GROUP_KEYS:
        raise ConfigError(f"Chave de agrupamento inválida: {key!r} (use {GROUP_KEYS})")
    if not scores:
        return {}
    frame = pd.DataFrame([{"method": s.method_id, "score": s.score} for s in scores])
    parts = frame["method"].str.split("|", expand=True)
    frame["model"] = parts[0]
    frame["strategy"] = parts[1].fillna(parts[0]) if parts.shape[1] > 1 else parts[0]
    means = frame.groupby(key, sort=True)["score"].mean()
    return {str(k): float(v) for k, v in means.items()}
