"""
Main entry point for the decoding-method benchmarking application.

Este modulo inicia o logging, o CLI e o Controller e encerra com o código
de saída devolvido pelo Controller.
"""

import sys
from typing import List, Optional

from src.cli import create_parser
from src.controller import EXIT_INPUT_ERROR, Controller
from src.controller import setup_logging

def main(argv: Optional[List[str]] = None) -> int:
    """Execução e controle do sistema"""

    setup_logging()

    try:
        args = create_parser(argv)
    except SystemExit as e:
        # argparse sai com 0 no --help e 2 em uso inválido
        return EXIT_INPUT_ERROR if e.code else 0
    controller = Controller()
    return controller.run(args)


if __name__ == "__main__":
    sys.exit(main())
