"""
src/controller/controller.py

Controller principal - Orquestra o fluxo MVC.
Delega operações específicas para handlers especializados e traduz o
desfecho em código de saída (0 sucesso, 1 entrada inválida, 2 erro de
motor, 3 resultado parcial).
"""

import logging
from dataclasses import replace
from typing import Any, Callable, Dict, Optional

from src.cli.views import ConsoleView
from src.errors import BenchmarkInputError, EngineError
from src.utils import RunConfig, load_run_config
from .handlers import (
    AgreementHandler,
    DavidsonHandler,
    DominanceHandler,
    IngestHandler,
    QTextHandler,
    ReportHandler,
    UfgHandler,
)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_ENGINE_ERROR = 2
EXIT_PARTIAL = 3

# motores executados por cada verbo; `report` segue a configuração
VERB_ENGINES = {
    "ingest": [],
    "dominance": ["davidson"],
    "bt": ["davidson"],
    "simulate": ["davidson"],
    "ufg": ["ufg"],
    "qtext": ["qtext"],
    "agreement": ["davidson", "qtext"],
}


class Controller:
    """
    Controller responsável por orquestração MVC.

    Delega operações para handlers especializados mantendo
    o controller enxuto e focado em roteamento.
    """

    def __init__(self, view: Any = None) -> None:
        """
        Inicializa o controller e seus handlers.

        Args:
            view: View para renderização (padrão: ConsoleView).
        """
        self.view = view or ConsoleView()
        self.logger = logging.getLogger(self.__class__.__name__)

        # Inicializar handlers especializados
        self.ingest_handler = IngestHandler(self.view, self.logger)
        self.dominance_handler = DominanceHandler(self.view, self.logger)
        self.davidson_handler = DavidsonHandler(self.view, self.logger)
        self.ufg_handler = UfgHandler(self.view, self.logger)
        self.qtext_handler = QTextHandler(self.view, self.logger)
        self.agreement_handler = AgreementHandler(self.view, self.logger)
        self.report_handler = ReportHandler(self.view, self.logger)

        self.logger.info("=" * 80)
        self.logger.info("Controller inicializado")
        self.logger.info("=" * 80)


    def run(self, args: Any) -> int:
        """
        Orquestra a execução baseada em argumentos.

        Args:
            args: Argumentos do parser (verbo, caminhos e flags globais).

        Returns:
            int: Código de saída.
        """
        try:
            self.logger.info(f"Iniciando operação: {self._operation_name(args)}")
            config = self.build_config(args)
            partial = self._dispatch_operation(args, config)
            return EXIT_PARTIAL if partial else EXIT_OK

        except BenchmarkInputError as e:
            self._handle_error("Entrada inválida", e)
            return EXIT_INPUT_ERROR
        except EngineError as e:
            self._handle_error("Erro de motor", e)
            return EXIT_ENGINE_ERROR
        except MemoryError as e:
            self._handle_error("Erro de memória", e, critical=True)
            return EXIT_ENGINE_ERROR
        except OSError as e:
            self._handle_error("Erro de sistema", e)
            return EXIT_INPUT_ERROR
        except KeyboardInterrupt:
            self.logger.warning("Operação interrompida pelo usuário")
            self.view.render_error("Operação interrompida pelo usuário.")
            return EXIT_ENGINE_ERROR
        except Exception as e:
            self.logger.exception(f"Erro inesperado: {e}")
            self.view.render_error(f"Erro inesperado: {e}")
            return EXIT_ENGINE_ERROR


    def build_config(self, args: Any) -> RunConfig:
        """Configuração do arquivo (ou padrão) com as flags da linha de comando aplicadas."""
        config = load_run_config(getattr(args, "config", None))
        command = args.command
        overrides: Dict[str, Any] = {
            "seed": getattr(args, "seed", None),
            "format": getattr(args, "format", None),
            "output_dir": getattr(args, "out", None),
        }
        if getattr(args, "paths", None):
            overrides["inputs"] = list(args.paths)
        if getattr(args, "raw", False):
            overrides["input_format"] = "raw"
        if command in VERB_ENGINES:
            overrides["engines"] = VERB_ENGINES[command]

        if command == "dominance" and args.share is not None:
            overrides["dominance_share"] = args.share
        elif command == "bt":
            section = config.davidson
            if args.haldane:
                section = replace(section, zero_count_handling="haldane")
            if args.strict:
                section = replace(section, strict=True)
            if args.max_iterations is not None:
                section = replace(section, max_iterations=args.max_iterations)
            overrides["davidson"] = section
        elif command == "ufg":
            overrides["methods"] = args.methods
            changes = {"posets_path": args.posets, "mode": args.mode, "max_size": args.max_size}
            overrides["ufg"] = replace(config.ufg, **{k: v for k, v in changes.items() if v is not None})
        elif command == "qtext" and args.qtext_command == "tune":
            changes = {"max_trials": args.trials, "restarts": args.restarts}
            overrides["qtext"] = replace(
                config.qtext,
                params_source="tune",
                ratings_path=args.ratings,
                **{k: v for k, v in changes.items() if v is not None},
            )
        elif command == "qtext" or (command == "agreement" and args.params is not None):
            params_path = args.params if args.params is not None else config.qtext.params_path
            overrides["qtext"] = replace(config.qtext, params_source="file", params_path=params_path)

        return config.with_overrides(**overrides)


    def _operation_name(self, args: Any) -> str:
        sub = getattr(args, "qtext_command", None)
        return f"{args.command} {sub}" if sub else args.command


    def _dispatch_operation(self, args: Any, config: RunConfig) -> bool:
        """Roteia a operação para o handler apropriado."""

        # Mapeamento de verbos para handlers
        dispatch_map: Dict[str, Callable[[], bool]] = {
            "ingest": lambda: self.ingest_handler.handle_ingest(config, args),
            "dominance": lambda: self.dominance_handler.handle_dominance(config, args),
            "bt": lambda: self.davidson_handler.handle_bt(config, args),
            "simulate": lambda: self.davidson_handler.handle_simulate(config, args),
            "ufg": lambda: self.ufg_handler.handle_ufg(config, args),
            "qtext score": lambda: self.qtext_handler.handle_score(config, args),
            "qtext tune": lambda: self.qtext_handler.handle_tune(config, args),
            "agreement": lambda: self.agreement_handler.handle_agreement(config, args),
            "report": lambda: self.report_handler.handle_report(config, args),
        }

        operation = self._operation_name(args)
        handler: Optional[Callable[[], bool]] = dispatch_map.get(operation)
        if handler is None:
            raise BenchmarkInputError(f"Operação desconhecida: {operation}")

        self.logger.info(f"Executando operação: {operation}")
        partial = handler()
        self.logger.info(f"Operação '{operation}' concluída (parcial: {partial})")
        return partial


    def _handle_error(self, msg: str, error: Exception, critical: bool = False) -> None:
        """Centraliza tratamento de erros."""
        if critical:
            self.logger.critical(f"{msg}: {error}")
        else:
            self.logger.error(f"{msg}: {error}")
        self.view.render_error(f"{msg}: {error}")
