"""
src/controller/handlers/ingest_handler.py

Handler do verbo `ingest`: valida as tabelas e, opcionalmente, grava os
registros validados no esquema de entrada.
"""

from collections import Counter
from typing import Any

from src.pipeline import EngineReport, dominance_config, load_records, write_records
from src.utils import RunConfig

from .base_handler import BaseHandler


class IngestHandler(BaseHandler):
    """Handler responsável pela validação das entradas."""

    def handle_ingest(self, config: RunConfig, args: Any) -> bool:
        datasets, records = load_records(config)
        per_method = Counter(r.method_id for r in records)
        data = {
            "datasets": {name: len(rows) for name, rows in datasets.items()},
            "records": len(records),
            "instances": len({r.instance_id for r in records}),
            "methods": dict(sorted(per_method.items())),
        }
        self.logger.info(f"Ingestão validada: {len(records)} registros, {len(per_method)} métodos")
        if getattr(args, "output", None):
            path = write_records(records, args.output, dominance_config(config).metric_names)
            data["output"] = str(path)
        return self.emit({"ingest": EngineReport("ingest", data)}, config, args.out)
