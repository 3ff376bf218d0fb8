"""
src/qtext/tuner.py

Busca aleatória local (hill climbing) dos nove parâmetros do Q*Text,
maximizando a correlação de Spearman com avaliações humanas.

A partir de theta_0, cada tentativa perturba as nove coordenadas do
incumbente com ruído gaussiano, grampeia nos limites e aceita a proposta
somente se rho melhora estritamente.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.dominance import MetricRecord
from src.errors import ConfigError, ConstantInput, DegenerateRatings, KeyMisalignment

from .correlation import MIN_PAIRS, spearman
from .scoring import THETA_0, QTextParams, metric_matrix, parameter_bounds, score_matrix

logger = logging.getLogger(__name__)

# chave de uma geração: "<instance_id>::<method_id>"
RECORD_KEY_SEPARATOR = "::"


@dataclass(frozen=True)
class TuneConfig:
    max_trials: int = 10_000
    perturbation_scale: float = 0.1
    rng_seed: int = 0
    restarts: int = 1

    def __post_init__(self) -> None:
        if self.max_trials < 1:
            raise ConfigError("max_trials deve ser >= 1")
        if not self.perturbation_scale > 0:
            raise ConfigError("perturbation_scale deve ser > 0")
        if self.restarts < 1:
            raise ConfigError("restarts deve ser >= 1")


@dataclass(frozen=True)
class TrialRecord:
    restart: int
    trial: int
    rho: float
    best_rho: float
    accepted: bool

    def to_dict(self) -> dict:
        return {
            "restart": self.restart,
            "trial": self.trial,
            "rho": self.rho if math.isfinite(self.rho) else None,
            "best_rho": self.best_rho if math.isfinite(self.best_rho) else None,
            "accepted": self.accepted,
        }


@dataclass
class TuneResult:
    params: QTextParams
    rho: float
    trace: List[TrialRecord] = field(default_factory=list)
    best_restart: int = 0
    granularity: str = "record"

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "rho": self.rho,
            "best_restart": self.best_restart,
            "granularity": self.granularity,
            "trace": [t.to_dict() for t in self.trace],
        }


def record_key(record: MetricRecord) -> str:
    return f"{record.instance_id}{RECORD_KEY_SEPARATOR}{record.method_id}"


@dataclass
class _Objective:
    """Matriz de métricas alinhada às avaliações; agrega por método se preciso."""

    matrix: np.ndarray
    ratings: np.ndarray
    groups: Optional[np.ndarray] = None

    def __call__(self, params: QTextParams) -> float:
        scores = score_matrix(self.matrix, params)
        if self.groups is not None:
            sums = np.bincount(self.groups, weights=scores)
            scores = sums / np.bincount(self.groups)
        try:
            return spearman(scores, self.ratings)
        except ConstantInput:
            return -math.inf


def align(records: Sequence[MetricRecord], ratings: Mapping[str, float]) -> Tuple[_Objective, str]:
    """
    Alinha os registros às avaliações humanas.

    Se todas as chaves das avaliações são ids de método, o score de cada método
    é a média dos seus registros; caso contrário cada chave deve ser
    "<instance_id>::<method_id>" de um registro.

    Raises:
        KeyMisalignment: Chaves sem registro correspondente.
        DegenerateRatings: Menos de três avaliações ou avaliações constantes.
    """
    if len(ratings) < MIN_PAIRS:
        raise DegenerateRatings(f"Ao menos {MIN_PAIRS} avaliações são necessárias, recebeu {len(ratings)}")
    values = np.array([float(ratings[k]) for k in sorted(ratings)], dtype=np.float64)
    if not np.all(np.isfinite(values)) or np.ptp(values) == 0:
        raise DegenerateRatings("Avaliações humanas constantes ou não finitas")

    keys = sorted(ratings)
    methods = sorted({r.method_id for r in records})
    if set(keys) <= set(methods):
        index = {method: k for k, method in enumerate(keys)}
        kept = [r for r in records if r.method_id in index]
        groups = np.array([index[r.method_id] for r in kept])
        return _Objective(metric_matrix(kept), values, groups), "method"

    by_key = {record_key(r): r for r in records}
    missing = [k for k in keys if k not in by_key]
    if missing:
        raise KeyMisalignment(
            f"{len(missing)} avaliações sem registro correspondente (ex.: {missing[:3]})"
        )
    return _Objective(metric_matrix([by_key[k] for k in keys]), values), "record"


def _climb(
    objective: _Objective, config: TuneConfig, rng: np.random.Generator, restart: int
) -> Tuple[QTextParams, float, List[TrialRecord]]:
    low, high = parameter_bounds()
    theta = THETA_0.as_vector()
    best = THETA_0
    best_rho = objective(best)
    trace = [TrialRecord(restart, 0, best_rho, best_rho, True)]
    for trial in range(1, config.max_trials + 1):
        proposal = np.clip(theta + rng.normal(0.0, config.perturbation_scale, size=theta.shape), low, high)
        params = QTextParams.from_vector(proposal)
        rho = objective(params)
        accepted = rho > best_rho
        if accepted:
            theta, best, best_rho = proposal, params, rho
            logger.debug(f"Reinício {restart}, tentativa {trial}: rho={rho:.6f}")
        trace.append(TrialRecord(restart, trial, rho, best_rho, accepted))
    return best, best_rho, trace


def tune(
    records: Sequence[MetricRecord], ratings: Mapping[str, float], config: TuneConfig = TuneConfig()
) -> TuneResult:
    """
    Ajusta os parâmetros do Q*Text por busca aleatória local.

    Args:
        records: Registros com métricas já normalizadas.
        ratings: Avaliações humanas por geração ou por método.
        config: Tentativas, escala da perturbação, semente e reinícios.

    Returns:
        TuneResult: Melhor theta, rho alcançado e o traço completo das tentativas.
    """
    objective, granularity = align(records, ratings)
    seeds = np.random.SeedSequence(config.rng_seed).spawn(config.restarts)

    result = None
    trace: List[TrialRecord] = []
    for restart, seed in enumerate(seeds):
        params, rho, restart_trace = _climb(objective, config, np.random.default_rng(seed), restart)
        trace.extend(restart_trace)
        logger.info(f"Reinício {restart}: rho={rho:.6f}")
        # empate mantém o reinício de menor índice
        if result is None or rho > result.rho:
            result = TuneResult(params, rho, best_restart=restart, granularity=granularity)

    result.trace = trace
    logger.info(f"Ajuste do Q*Text concluído: rho={result.rho:.6f} (granularidade {granularity})")
    return result
