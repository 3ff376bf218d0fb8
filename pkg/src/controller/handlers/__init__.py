"""
src/controller/handlers/__init__.py

Inicialização do pacote handlers.
Exporta todos os handlers para uso no controller.
"""

from .base_handler import BaseHandler
from .ingest_handler import IngestHandler
from .dominance_handler import DominanceHandler
from .davidson_handler import DavidsonHandler
from .ufg_handler import UfgHandler
from .qtext_handler import QTextHandler
from .agreement_handler import AgreementHandler
from .report_handler import ReportHandler

__all__ = [
    'BaseHandler',
    'IngestHandler',
    'DominanceHandler',
    'DavidsonHandler',
    'UfgHandler',
    'QTextHandler',
    'AgreementHandler',
    'ReportHandler',
]
