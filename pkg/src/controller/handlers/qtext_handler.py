"""
src/controller/handlers/qtext_handler.py

Handlers de `qtext score` e `qtext tune`.
"""

from typing import Any

from src.pipeline import load_datasets, dominance_config, run_qtext
from src.utils import RunConfig

from .base_handler import BaseHandler


class QTextHandler(BaseHandler):
    """Pontuação e ajuste do Q*Text."""

    def _run(self, config: RunConfig, args: Any) -> bool:
        datasets = load_datasets(config.inputs, dominance_config(config), raw=config.input_format == "raw")
        report, means = run_qtext(datasets, config)
        if means:
            best = max(sorted(means), key=lambda m: means[m])
            self.logger.info(f"Melhor Q*Text médio: {best} ({100 * means[best]:.2f})")
        return self.emit({"qtext": report}, config, args.out)

    def handle_score(self, config: RunConfig, args: Any) -> bool:
        return self._run(config, args)

    def handle_tune(self, config: RunConfig, args: Any) -> bool:
        return self._run(config, args)
