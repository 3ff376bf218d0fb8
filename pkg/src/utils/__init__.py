"""
Modulo de inicialização do pacote utils.
"""
from typing import List

from .run_config import (
    ENGINES,
    FORMATS,
    DavidsonSection,
    QTextSection,
    RunConfig,
    UfgSection,
    load_run_config,
)

__all__: List[str] = [
    "ENGINES",
    "FORMATS",
    "DavidsonSection",
    "QTextSection",
    "RunConfig",
    "UfgSection",
    "load_run_config",
]
