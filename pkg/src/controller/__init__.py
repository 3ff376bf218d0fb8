"""
src/controller/__init__.py

Inicialização do pacote controller.

"""

from .controller import (
    EXIT_ENGINE_ERROR,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_PARTIAL,
    Controller,
)
from .logger_config import setup_logging

__all__ = [
    'EXIT_ENGINE_ERROR',
    'EXIT_INPUT_ERROR',
    'EXIT_OK',
    'EXIT_PARTIAL',
    'Controller',
    'setup_logging'
]
