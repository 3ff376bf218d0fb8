"""
Modulo de inicializacao do pacote CLI
"""
from typing import List
from .arguments import build_parser, create_parser
from .views import ConsoleView

__all__: List[str] = ["build_parser", "create_parser", "ConsoleView"]
