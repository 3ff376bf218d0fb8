"""
Modulo de inicialização do pacote qtext.
"""
from typing import List

from .correlation import spearman
from .normalization import QTEXT_METRICS, MetricBounds, NormalizationBounds, apply_bounds, normalize
from .scoring import (
    DEFAULT_PARAMS_PATH,
    THETA_0,
    QTextParams,
    ScoredRecord,
    group_means,
    load_params,
    parameter_bounds,
    params_document,
    score,
    score_gradient,
    score_matrix,
    score_records,
)
from .tuner import TrialRecord, TuneConfig, TuneResult, align, record_key, tune

__all__: List[str] = [
    "DEFAULT_PARAMS_PATH",
    "QTEXT_METRICS",
    "THETA_0",
    "MetricBounds",
    "NormalizationBounds",
    "QTextParams",
    "ScoredRecord",
    "TrialRecord",
    "TuneConfig",
    "TuneResult",
    "align",
    "apply_bounds",
    "group_means",
    "load_params",
    "normalize",
    "parameter_bounds",
    "params_document",
    "record_key",
    "score",
    "score_gradient",
    "score_matrix",
    "score_records",
    "spearman",
    "tune",
]
