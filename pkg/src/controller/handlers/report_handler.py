"""
src/controller/handlers/report_handler.py

Handler do verbo `report`: execução completa gravada em disco.
"""

from typing import Any

from src.pipeline import run
from src.utils import RunConfig

from .base_handler import BaseHandler


class ReportHandler(BaseHandler):
    """Executa todos os motores configurados e grava os relatórios."""

    def handle_report(self, config: RunConfig, args: Any) -> bool:
        result = run(config)
        return self.emit(result.reports, config, config.output_dir, result.manifest)
