"""
src/controller/handlers/dominance_handler.py

Handler do verbo `dominance`.
"""

from typing import Any

from src.pipeline import load_records, pooled_tallies, run_dominance
from src.utils import RunConfig

from .base_handler import BaseHandler


class DominanceHandler(BaseHandler):
    """Contagens de dominância por par e resumo das dominâncias estritas."""

    def handle_dominance(self, config: RunConfig, args: Any) -> bool:
        datasets, _ = load_records(config)
        report = run_dominance(pooled_tallies(datasets, config), config)
        summary = report.data["summary"]
        self.logger.info(
            f"Dominância: {len(summary['methods'])} métodos, "
            f"{len(summary['full_dominance'])} dominâncias completas"
        )
        return self.emit({"dominance": report}, config, args.out)
