"""
src/controller/handlers/agreement_handler.py

Handler do verbo `agreement`: Davidson e Q*Text sobre as mesmas entradas.
"""

from typing import Any

from src.pipeline import load_records, pooled_tallies, run_agreement, run_davidson, run_qtext
from src.utils import RunConfig

from .base_handler import BaseHandler


class AgreementHandler(BaseHandler):
    """Concordância entre os rankings de Davidson e do Q*Text."""

    def handle_agreement(self, config: RunConfig, args: Any) -> bool:
        datasets, _ = load_records(config)
        davidson, table = run_davidson(pooled_tallies(datasets, config), config)
        qtext, means = run_qtext(datasets, config)
        agreement = run_agreement(table, means)
        self.logger.info(f"Concordância: rho={agreement.data['rho']}")
        return self.emit({"davidson": davidson, "qtext": qtext, "agreement": agreement}, config, args.out)
