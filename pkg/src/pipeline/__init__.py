"""
Modulo de inicialização do pacote pipeline.
"""
from typing import List

from .agreement import AgreementReport, agreement
from .ingest import (
    ingest,
    ingest_raw,
    load_datasets,
    merge,
    read_posets,
    read_ratings,
    write_records,
)
from .reports import format_table, render_text, to_json, write_reports
from .runner import (
    EngineReport,
    RunResult,
    build_manifest,
    dominance_config,
    load_records,
    observed_posets,
    pooled_tallies,
    run,
    run_agreement,
    run_davidson,
    run_dominance,
    run_qtext,
    run_ufg,
)

__all__: List[str] = [
    "AgreementReport",
    "EngineReport",
    "RunResult",
    "agreement",
    "build_manifest",
    "dominance_config",
    "format_table",
    "ingest",
    "ingest_raw",
    "load_datasets",
    "load_records",
    "merge",
    "observed_posets",
    "pooled_tallies",
    "read_posets",
    "read_ratings",
    "render_text",
    "run",
    "run_agreement",
    "run_davidson",
    "run_dominance",
    "run_qtext",
    "run_ufg",
    "to_json",
    "write_records",
    "write_reports",
]
