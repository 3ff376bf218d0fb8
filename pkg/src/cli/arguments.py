"""
src/cli/arguments.py
Esse módulo define o parser de argumentos para a aplicação CLI.

Flags globais (--config, --seed, --out, --format) vêm antes do verbo:

    python main.py --out reports bt data/run.csv
"""

import argparse
from typing import Any, List, Optional


def _add_inputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("paths",
        help="Tabelas de métricas (CSV ou JSON-lines); se omitidas, usa 'inputs' da configuração",
        nargs="*")
    parser.add_argument("--raw",
        help="Entradas são gerações brutas (tokens e logprobs em JSON)",
        action="store_true")


def build_parser() -> argparse.ArgumentParser:
    """
    Monta o parser com os verbos da aplicação.
    Returns:
        argparse.ArgumentParser: Parser configurado.
    """
    parser = argparse.ArgumentParser(
        prog="decoding-bench",
        description="Ranking multicritério de métodos de decodificação")

    parser.add_argument("--config",
        help="Arquivo JSON de configuração da execução",
        type=str)
    parser.add_argument("--seed",
        help="Semente dos geradores aleatórios",
        type=int)
    parser.add_argument("--out",
        help="Diretório de saída dos relatórios",
        type=str)
    parser.add_argument("--format",
        help="Formato da saída no console",
        choices=["json", "table"])

    commands = parser.add_subparsers(dest="command", required=True)

    ingest = commands.add_parser("ingest", help="Valida tabelas e grava os registros normalizados")
    _add_inputs(ingest)
    ingest.add_argument("--output",
        help="Arquivo de saída (.csv ou .jsonl) com os registros validados",
        type=str)

    dominance = commands.add_parser("dominance", help="Contagens de dominância por par de métodos")
    _add_inputs(dominance)
    dominance.add_argument("--share",
        help="Fração mínima de instâncias para o resumo de dominância (padrão: 0.9)",
        type=float)

    bt = commands.add_parser("bt", help="Ajuste de Bradley-Terry com empates (Davidson)")
    _add_inputs(bt)
    bt.add_argument("--haldane",
        help="Soma 0.5 a toda célula (contagens com separação)",
        action="store_true")
    bt.add_argument("--strict",
        help="Falha se o ajuste não convergir",
        action="store_true")
    bt.add_argument("--max-iterations",
        help="Limite de iterações do ajuste",
        type=int)

    simulate = commands.add_parser("simulate", help="Sorteia contagens do modelo de Davidson e reajusta")
    simulate.add_argument("--worth",
        help="Worth verdadeiro de um método, no formato nome=valor",
        action="append",
        required=True)
    simulate.add_argument("--nu",
        help="Parâmetro de empate",
        type=float,
        default=1.0)
    simulate.add_argument("--instances",
        help="Comparações por par",
        type=int,
        default=1000)

    ufg = commands.add_parser("ufg", help="Profundidade ufg dos posets por instância")
    _add_inputs(ufg)
    ufg.add_argument("--methods",
        help="Subconjunto de métodos analisados",
        nargs="+")
    ufg.add_argument("--posets",
        help="Arquivo JSON com posets observados (no lugar das tabelas)",
        type=str)
    ufg.add_argument("--mode",
        help="Ponderação dos conjuntos ufg (padrão: weighted)",
        choices=["weighted", "uniform_count"])
    ufg.add_argument("--max-size",
        help="Maior número de posets por conjunto ufg",
        type=int)

    qtext = commands.add_parser("qtext", help="Score composto Q*Text")
    qtext_commands = qtext.add_subparsers(dest="qtext_command", required=True)
    score = qtext_commands.add_parser("score", help="Pontua registros com parâmetros de arquivo")
    _add_inputs(score)
    score.add_argument("--params",
        help="Documento JSON de parâmetros (padrão: parâmetros publicados)",
        type=str)
    tune = qtext_commands.add_parser("tune", help="Ajusta os parâmetros contra avaliações humanas")
    _add_inputs(tune)
    tune.add_argument("--ratings",
        help="CSV de avaliações humanas (key,rating)",
        type=str,
        required=True)
    tune.add_argument("--trials",
        help="Número de tentativas por reinício",
        type=int)
    tune.add_argument("--restarts",
        help="Número de reinícios",
        type=int)

    agreement = commands.add_parser("agreement", help="Concordância entre Davidson e Q*Text")
    _add_inputs(agreement)
    agreement.add_argument("--params",
        help="Documento JSON de parâmetros do Q*Text",
        type=str)

    report = commands.add_parser("report", help="Execução completa conforme a configuração")
    _add_inputs(report)

    return parser


def create_parser(argv: Optional[List[str]] = None) -> Any:
    """
    Cria o parser e devolve os argumentos parseados.
    Args:
         argv: Argumentos (padrão: sys.argv).
    Returns:
        argparse.Namespace: Objeto contendo os argumentos parseados.
    """
    return build_parser().parse_args(argv)
