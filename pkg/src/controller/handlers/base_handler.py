"""
src/controller/handlers/base_handler.py

Handler base: renderização dos relatórios e gravação opcional em disco.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

from src.pipeline import EngineReport, build_manifest, write_reports
from src.utils import RunConfig


class BaseHandler:
    """Handler base com funcionalidades comuns."""

    def __init__(self, view: Any, logger: logging.Logger):
        self.view = view
        self.logger = logger

    def emit(
        self,
        reports: Dict[str, EngineReport],
        config: RunConfig,
        out_dir: Optional[str] = None,
        manifest: Optional[dict] = None,
    ) -> bool:
        """
        Exibe os relatórios e, se houver diretório de saída, grava-os.

        Returns:
            bool: True se algum relatório é parcial.
        """
        for name, report in reports.items():
            self.view.render_report(name, report.data, config.format)
        written = []
        if out_dir is not None:
            documents = {name: report.data for name, report in reports.items()}
            written = write_reports(documents, manifest or build_manifest(config), Path(out_dir))
            self.view.render_written(written)
        partial = any(report.partial for report in reports.values())
        if partial:
            self.logger.warning("Resultado parcial (truncado ou não convergido)")
            self.view.render_warning("Resultado parcial: enumeração truncada ou ajuste não convergido.")
        elif written:
            self.view.render_success(f"{len(written)} arquivos gravados em {out_dir}")
        return partial
