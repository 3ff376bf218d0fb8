"""
src/pipeline/runner.py

Orquestração de uma execução: lê os dados conforme o RunConfig, executa os
motores selecionados (davidson, ufg, qtext), a análise de concordância e
monta o manifesto.
"""

import hashlib
import logging
import platform
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, TypeVar

import networkx
import numpy
import pandas
import scipy

from src.davidson import FitConfig, WorthTable, fit
from src.dominance import (
    ComparisonTally,
    DominanceConfig,
    MetricRecord,
    dominance_summary,
    instance_posets,
    merge_tallies,
    tally,
)
from src.errors import BenchmarkInputError, ConfigError, EngineError, EngineFailure
from src.poset import PosetSet
from src.qtext import (
    DEFAULT_PARAMS_PATH,
    QTEXT_METRICS,
    NormalizationBounds,
    TuneConfig,
    group_means,
    load_params,
    normalize,
    params_document,
    score_records,
    tune,
)
from src.ufg import DepthMode, candidate_universe, rank_by_depth
from src.utils import RunConfig

from .agreement import agreement
from .ingest import load_datasets, merge, read_posets, read_ratings

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class EngineReport:
    """Relatório de um motor; `partial` marca resultado truncado ou não convergido."""

    engine: str
    data: dict
    partial: bool = False


@dataclass
class RunResult:
    reports: Dict[str, EngineReport] = field(default_factory=dict)
    manifest: dict = field(default_factory=dict)

    @property
    def partial(self) -> bool:
        return any(report.partial for report in self.reports.values())

    def as_documents(self) -> Dict[str, dict]:
        return {name: report.data for name, report in self.reports.items()}


def engine_step(engine: str, step: Callable[[], T]) -> T:
    """Executa um passo de motor, marcando erros de motor com o nome dele."""
    try:
        return step()
    except EngineFailure:
        raise
    except EngineError as e:
        logger.error(f"Motor {engine} falhou: {e}")
        raise EngineFailure(engine, e) from e


def dominance_config(config: RunConfig) -> DominanceConfig:
    return DominanceConfig.from_mapping(config.directions, config.eq_tolerance)


def load_records(config: RunConfig) -> Tuple[Dict[str, List[MetricRecord]], List[MetricRecord]]:
    """Lê as entradas; devolve os conjuntos por nome e a concatenação."""
    datasets = load_datasets(config.inputs, dominance_config(config), raw=config.input_format == "raw")
    return datasets, merge(datasets)


# --- dominance / davidson ---------------------------------------------------------

def pooled_tallies(datasets: Dict[str, List[MetricRecord]], config: RunConfig) -> List[ComparisonTally]:
    """Contagens por arquivo de entrada, somadas por par."""
    dominance = dominance_config(config)
    methods = {r.method_id for records in datasets.values() for r in records}
    return merge_tallies((tally(records, dominance) for records in datasets.values()), methods)


def run_dominance(tallies: List[ComparisonTally], config: RunConfig) -> EngineReport:
    """Contagens por par e resumo de dominâncias estritas."""
    summary = dominance_summary(tallies, config.dominance_share)
    return EngineReport(
        "dominance",
        {"tallies": [t.to_dict() for t in tallies], "summary": summary.to_dict()},
    )


def run_davidson(tallies: List[ComparisonTally], config: RunConfig) -> Tuple[EngineReport, WorthTable]:
    """Ajuste de Davidson sobre as contagens de dominância."""
    section = config.davidson
    fit_config = FitConfig(
        max_iterations=section.max_iterations,
        tolerance=section.tolerance,
        zero_count_handling=section.zero_count_handling,
        strict=section.strict,
    )
    table = engine_step("davidson", lambda: fit(tallies, fit_config))
    report = EngineReport(
        "davidson",
        {
            "config": asdict(section),
            "tallies": [t.to_dict() for t in tallies],
            "fit": table.to_dict(),
        },
        partial=not table.converged,
    )
    return report, table


# --- ufg ----------------------------------------------------------------------------

def ufg_methods(records: List[MetricRecord], config: RunConfig) -> List[str]:
    """Métodos do motor ufg: o filtro configurado ou todos, até o limite."""
    available = sorted({r.method_id for r in records})
    methods = sorted(config.methods) if config.methods else available
    unknown = sorted(set(methods) - set(available))
    if unknown:
        raise ConfigError(f"Métodos do filtro ausentes dos dados: {unknown}")
    if len(methods) > config.ufg.method_limit:
        raise ConfigError(
            f"{len(methods)} métodos excedem o limite ufg de {config.ufg.method_limit}; "
            "informe um filtro de métodos"
        )
    return methods


def run_ufg(observed: PosetSet, config: RunConfig) -> EngineReport:
    """Profundidade ufg dos posets observados (ou do universo de candidatos)."""
    section = config.ufg

    def step():
        candidates = None
        if section.candidate_budget is not None:
            candidates = candidate_universe(observed, section.candidate_budget)
        return rank_by_depth(
            observed,
            candidates=candidates,
            mode=DepthMode(section.mode),
            max_size=section.max_size,
            budget=section.combination_budget,
        )

    result = engine_step("ufg", step)
    depth = result.to_dict()
    for entry, document in zip(result.entries, depth["entries"]):
        document["label"] = str(entry.poset)
    return EngineReport(
        "ufg",
        {
            "methods": [str(e) for e in observed.elements],
            "observations": observed.total,
            "distinct": len(observed.distinct),
            "depth": depth,
        },
        partial=result.truncated,
    )


def observed_posets(records: List[MetricRecord], config: RunConfig) -> PosetSet:
    """Posets por instância para o motor ufg, ou os posets do arquivo configurado."""
    if config.ufg.posets_path:
        return read_posets(config.ufg.posets_path)
    methods = ufg_methods(records, config)
    return engine_step("ufg", lambda: instance_posets(records, dominance_config(config), methods))


# --- qtext ----------------------------------------------------------------------------

def _qtext_config(config: RunConfig) -> DominanceConfig:
    base = dominance_config(config)
    missing = [name for name in QTEXT_METRICS if name not in base.metric_names]
    if missing:
        raise ConfigError(f"Q*Text exige as métricas {missing} na configuração")
    return DominanceConfig(tuple(d for d in base.directions if d.name in QTEXT_METRICS))


def _normalization(
    datasets: Dict[str, List[MetricRecord]], config: RunConfig
) -> Dict[str, Tuple[List[MetricRecord], NormalizationBounds]]:
    qcfg = _qtext_config(config)
    if config.qtext.per_dataset_normalization:
        return {name: normalize(records, qcfg, dataset=name) for name, records in datasets.items()}
    name = "+".join(datasets)
    return {name: normalize(merge(datasets), qcfg, dataset=name)}


def run_qtext(
    datasets: Dict[str, List[MetricRecord]], config: RunConfig
) -> Tuple[EngineReport, Dict[str, float]]:
    """
    Pontuação Q*Text com parâmetros de arquivo ou ajustados contra avaliações
    humanas. Limites de normalização gravados no arquivo de parâmetros têm
    precedência sobre os calculados na execução.
    """
    section = config.qtext
    tuning = None
    stored_bounds: Optional[NormalizationBounds] = None

    if section.params_source == "tune":
        ratings = read_ratings(section.ratings_path)
        normalized = _normalization(datasets, config)
        records = [r for records, _ in normalized.values() for r in records]
        tune_config = TuneConfig(
            max_trials=section.max_trials,
            perturbation_scale=section.perturbation_scale,
            rng_seed=config.seed,
            restarts=section.restarts,
        )
        tuning = tune(records, ratings, tune_config)
        params, provenance = tuning.params, {"source": "tune", "ratings": Path(section.ratings_path).name}
    else:
        params, stored_bounds = load_params(section.params_path)
        path = Path(section.params_path) if section.params_path else DEFAULT_PARAMS_PATH
        provenance = {"source": "file", "params": path.name}

    if stored_bounds is not None:
        bounds = {stored_bounds.dataset or "stored": stored_bounds}
        scoring_sets = {name: merge(datasets) for name in bounds}
    else:
        bounds = {name: b for name, (_, b) in _normalization(datasets, config).items()}
        scoring_sets = datasets if section.per_dataset_normalization else {next(iter(bounds)): merge(datasets)}

    scores, clamped = [], 0
    for name, records in scoring_sets.items():
        scored, count = score_records(records, bounds[name], params)
        scores += scored
        clamped += count

    means = {level: group_means(scores, level) for level in ("method", "model", "strategy")}
    data = {
        "params": params_document(params),
        "provenance": provenance,
        "bounds": {name: b.to_dict() for name, b in sorted(bounds.items())},
        "clamped": clamped,
        "means": means,
        "scores": [s.to_dict() for s in scores],
    }
    if tuning is not None:
        data["tuning"] = tuning.to_dict()
    return EngineReport("qtext", data), means["method"]


def run_agreement(table: WorthTable, means: Dict[str, float]) -> EngineReport:
    return EngineReport("agreement", agreement(table, means).to_dict())


# --- execução completa ------------------------------------------------------------------

def file_digest(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def build_manifest(config: RunConfig) -> dict:
    """Digests das entradas, configuração, semente e versões do ambiente."""
    files = list(config.inputs)
    for extra in (config.ufg.posets_path, config.qtext.ratings_path, config.qtext.params_path):
        if extra:
            files.append(extra)
    return {
        "inputs": [{"path": Path(p).name, "sha256": file_digest(p)} for p in files],
        "config": config.to_dict(),
        "seed": config.seed,
        "engines": sorted(config.engines),
        "versions": {
            "python": platform.python_version(),
            "numpy": numpy.__version__,
            "scipy": scipy.__version__,
            "pandas": pandas.__version__,
            "networkx": networkx.__version__,
        },
    }


def run(config: RunConfig) -> RunResult:
    """
    Executa os motores selecionados sobre as entradas configuradas.

    Args:
        config: Configuração validada.

    Returns:
        RunResult: Relatório por motor (mais dominância e concordância quando
        aplicáveis) e o manifesto.

    Raises:
        BenchmarkInputError: Entradas ou configuração inválidas.
        EngineFailure: Erro de motor, marcado com o nome do motor.
    """
    engines = set(config.engines)
    needs_records = bool(engines - {"ufg"}) or not config.ufg.posets_path
    if needs_records and not config.inputs:
        raise BenchmarkInputError("Nenhum arquivo de entrada na configuração")

    datasets, records = load_records(config) if needs_records else ({}, [])
    result = RunResult()
    table = None
    means = None

    if "davidson" in engines:
        tallies = pooled_tallies(datasets, config)
        result.reports["dominance"] = run_dominance(tallies, config)
        result.reports["davidson"], table = run_davidson(tallies, config)
    if "ufg" in engines:
        result.reports["ufg"] = run_ufg(observed_posets(records, config), config)
    if "qtext" in engines:
        result.reports["qtext"], means = run_qtext(datasets, config)
    if table is not None and means is not None:
        result.reports["agreement"] = run_agreement(table, means)

    result.manifest = build_manifest(config)
    logger.info(f"Execução concluída: {sorted(result.reports)} (parcial: {result.partial})")
    return result
