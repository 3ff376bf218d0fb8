"""
src/controller/handlers/ufg_handler.py

Handler do verbo `ufg`.
"""

from typing import Any

from src.pipeline import load_records, observed_posets, run_ufg
from src.utils import RunConfig

from .base_handler import BaseHandler


class UfgHandler(BaseHandler):
    """Profundidade ufg sobre posets por instância ou lidos de arquivo."""

    def handle_ufg(self, config: RunConfig, args: Any) -> bool:
        records = [] if config.ufg.posets_path else load_records(config)[1]
        observed = observed_posets(records, config)
        self.logger.info(f"{observed.total} posets observados ({len(observed.distinct)} distintos)")
        report = run_ufg(observed, config)
        return self.emit({"ufg": report}, config, args.out)
