"""
src/cli/views.py
Views layer para apresentação de dados.

Responsável por formatação e exibição dos relatórios no console.
"""

from pathlib import Path
from typing import Iterable

from src.pipeline.reports import render_text, to_json


class ConsoleView():
    """View para exibição em console (terminal)."""

    def render_report(self, engine: str, data: dict, fmt: str = "json") -> None:
        """
        Exibe o relatório de um motor.

        Args:
            engine: Nome do motor (davidson, ufg, qtext, ...).
            data: Documento do relatório.
            fmt: "json" ou "table".
        """
        if fmt == "table":
            print("\n" + "=" * 60)
            print(engine.upper().center(60))
            print("=" * 60)
            print(render_text(engine, data))
        else:
            print(to_json({engine: data}), end="")

    def render_written(self, paths: Iterable[Path]) -> None:
        """Lista os arquivos gravados."""
        for path in paths:
            print(f" gravado: {path}")

    def render_error(self, message: str) -> None:
        """Exibe erro em console."""
        print(f"\n ERRO: {message}\n")

    def render_warning(self, message: str) -> None:
        """Exibe aviso de resultado parcial."""
        print(f"\n AVISO: {message}\n")

    def render_success(self, message: str) -> None:
        """Exibe mensagem de sucesso."""
        print(f"\n {message}\n")
