"""
src/pipeline/ingest.py

Leitura das tabelas de métricas (CSV ou JSON-lines), das gerações brutas e
das avaliações humanas.

Esquema: `instance_id,method_id,<métricas...>`; no lugar de `method_id`
aceitam-se as colunas `model,strategy,params`, unidas como
"Modelo|Estratégia|Parâmetros".
"""

import json
import logging
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from src.dominance import DominanceConfig, MetricRecord
from src.errors import (
    BenchmarkInputError,
    DuplicateRecord,
    NonFiniteValue,
    ParseError,
)
from src.metrics import score_generation
from src.poset import Poset, PosetSet

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

METHOD_PARTS = ("model", "strategy", "params")
METHOD_SEPARATOR = "|"
INSTANCE_SEPARATOR = ":"


def _is_jsonl(path: Path) -> bool:
    return path.suffix.lower() in (".jsonl", ".ndjson")


def _first_data_line(path: Path) -> int:
    # CSV tem cabeçalho na linha 1
    return 1 if _is_jsonl(path) else 2


def read_table(path: PathLike) -> pd.DataFrame:
    """
    Lê o arquivo como tabela de strings, sem conversão automática de NaN.

    Raises:
        ParseError: Arquivo ausente ou malformado.
    """
    path = Path(path)
    if not path.is_file():
        raise ParseError("arquivo não encontrado", path=str(path))
    try:
        if _is_jsonl(path):
            frame = pd.read_json(path, lines=True, dtype=False)
            return frame.astype(object).where(frame.notna(), None)
        return pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError, UnicodeDecodeError) as e:
        raise ParseError(f"arquivo malformado: {e}", path=str(path)) from e


def _method_id(row: pd.Series, columns: Sequence[str], line: int, path: Path) -> str:
    if "method_id" in columns:
        return _text(row["method_id"], "method_id", line, path)
    return METHOD_SEPARATOR.join(_text(row[part], part, line, path) for part in METHOD_PARTS)


def _text(value: object, column: str, line: int, path: Path) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)) or str(value).strip() == "":
        raise ParseError(f"coluna {column!r} ausente ou vazia", line=line, path=str(path))
    return str(value).strip()


def _number(value: object, column: str, line: int, path: Path) -> float:
    text = _text(value, column, line, path)
    try:
        number = float(text)
    except ValueError as e:
        raise ParseError(f"valor não numérico em {column!r}: {text!r}", line=line, path=str(path)) from e
    if not math.isfinite(number):
        raise NonFiniteValue(f"{path}:{line}: valor não finito em {column!r}: {text!r}")
    return number


def _check_header(frame: pd.DataFrame, required: Sequence[str], path: Path) -> None:
    columns = list(frame.columns)
    missing = [c for c in required if c not in columns]
    if "method_id" not in columns:
        missing += [c for c in METHOD_PARTS if c not in columns]
    if missing:
        raise ParseError(f"cabeçalho sem as colunas {missing}", line=1, path=str(path))


def _check_duplicates(keys: List[Tuple[str, str]], lines: List[int], path: Path) -> None:
    seen: Dict[Tuple[str, str], int] = {}
    for key, line in zip(keys, lines):
        if key in seen:
            raise DuplicateRecord(
                f"{path}: registro duplicado (instância {key[0]!r}, método {key[1]!r}) "
                f"nas linhas {seen[key]} e {line}"
            )
        seen[key] = line


def ingest(
    path: PathLike,
    config: DominanceConfig = DominanceConfig(),
    instance_prefix: Optional[str] = None,
) -> List[MetricRecord]:
    """
    Lê e valida uma tabela de métricas.

    Args:
        path: Arquivo CSV ou JSON-lines.
        config: Métricas esperadas (colunas extras são ignoradas).
        instance_prefix: Prefixo opcional dos ids de instância (execuções mescladas).

    Returns:
        Lista de MetricRecord na ordem do arquivo.

    Raises:
        ParseError: Cabeçalho incompleto ou célula inválida (com número de linha).
        DuplicateRecord: Par (instância, método) repetido.
        NonFiniteValue: NaN ou infinito numa métrica.
    """
    path = Path(path)
    frame = read_table(path)
    _check_header(frame, ("instance_id", *config.metric_names), path)
    first = _first_data_line(path)
    columns = list(frame.columns)

    records = []
    lines = []
    for offset, (_, row) in enumerate(frame.iterrows()):
        line = first + offset
        instance = _text(row["instance_id"], "instance_id", line, path)
        if instance_prefix:
            instance = f"{instance_prefix}{INSTANCE_SEPARATOR}{instance}"
        values = {name: _number(row[name], name, line, path) for name in config.metric_names}
        records.append(MetricRecord(instance, _method_id(row, columns, line, path), values))
        lines.append(line)

    _check_duplicates([(r.instance_id, r.method_id) for r in records], lines, path)
    logger.info(f"{len(records)} registros lidos de {path}")
    return records


def _json_array(value: object, column: str, line: int, path: Path) -> list:
    if isinstance(value, list):
        return value
    text = _text(value, column, line, path)
    try:
        parsed = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{column!r} não é um array JSON: {e}", line=line, path=str(path)) from e
    if not isinstance(parsed, list):
        raise ParseError(f"{column!r} deve ser um array JSON", line=line, path=str(path))
    return parsed


def ingest_raw(path: PathLike, instance_prefix: Optional[str] = None) -> List[MetricRecord]:
    """
    Lê gerações brutas (`tokens` e `logprobs` como arrays JSON) e calcula as
    três métricas de cada linha.

    Raises:
        ParseError: Linha malformada.
        SequenceTooShort, EmptySequence, NonFiniteValue: Entradas inválidas
            para as métricas, com o número da linha na mensagem.
    """
    path = Path(path)
    frame = read_table(path)
    _check_header(frame, ("instance_id", "tokens", "logprobs"), path)
    first = _first_data_line(path)
    columns = list(frame.columns)

    records = []
    lines = []
    for offset, (_, row) in enumerate(frame.iterrows()):
        line = first + offset
        instance = _text(row["instance_id"], "instance_id", line, path)
        if instance_prefix:
            instance = f"{instance_prefix}{INSTANCE_SEPARATOR}{instance}"
        tokens = _json_array(row["tokens"], "tokens", line, path)
        logprobs = _json_array(row["logprobs"], "logprobs", line, path)
        try:
            values = score_generation(tokens, logprobs)
        except ParseError:
            raise
        except BenchmarkInputError as e:
            raise type(e)(f"{path}:{line}: {e}") from e
        records.append(MetricRecord(instance, _method_id(row, columns, line, path), values))
        lines.append(line)

    _check_duplicates([(r.instance_id, r.method_id) for r in records], lines, path)
    logger.info(f"{len(records)} gerações brutas pontuadas a partir de {path}")
    return records


def load_datasets(
    paths: Sequence[PathLike], config: DominanceConfig = DominanceConfig(), raw: bool = False
) -> Dict[str, List[MetricRecord]]:
    """
    Lê vários arquivos; com mais de um, os ids de instância recebem o nome do
    arquivo (sem extensão) como prefixo para continuarem distintos.

    Returns:
        Mapeamento nome do conjunto -> registros, na ordem dos caminhos.
    """
    if not paths:
        raise BenchmarkInputError("Nenhum arquivo de entrada informado")
    stems = [Path(p).stem for p in paths]
    if len(set(stems)) != len(stems):
        raise BenchmarkInputError(f"Arquivos de entrada com nomes repetidos: {stems}")
    merged = len(paths) > 1
    datasets = {}
    for path, stem in zip(paths, stems):
        prefix = stem if merged else None
        datasets[stem] = ingest_raw(path, prefix) if raw else ingest(path, config, prefix)
    return datasets


def merge(datasets: Dict[str, List[MetricRecord]]) -> List[MetricRecord]:
    """Concatena os conjuntos na ordem de inserção."""
    return [record for records in datasets.values() for record in records]


def write_records(records: Sequence[MetricRecord], path: PathLike, metric_names: Sequence[str]) -> Path:
    """Grava registros no esquema de entrada (CSV ou JSON-lines, pela extensão)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(
        [
            {"instance_id": r.instance_id, "method_id": r.method_id, **{n: r.values[n] for n in metric_names}}
            for r in records
        ],
        columns=["instance_id", "method_id", *metric_names],
    )
    if _is_jsonl(path):
        frame.to_json(path, orient="records", lines=True, double_precision=15)
    else:
        frame.to_csv(path, index=False, float_format="%.17g")
    return path


def read_ratings(path: PathLike) -> Dict[str, float]:
    """
    Lê avaliações humanas no esquema `key,rating`.

    Raises:
        ParseError: Cabeçalho ou valor inválido.
        DuplicateRecord: Chave repetida.
    """
    path = Path(path)
    frame = read_table(path)
    missing = [c for c in ("key", "rating") if c not in frame.columns]
    if missing:
        raise ParseError(f"cabeçalho sem as colunas {missing}", line=1, path=str(path))
    first = _first_data_line(path)
    ratings: Dict[str, float] = {}
    for offset, (_, row) in enumerate(frame.iterrows()):
        line = first + offset
        key = _text(row["key"], "key", line, path)
        if key in ratings:
            raise DuplicateRecord(f"{path}:{line}: chave de avaliação repetida {key!r}")
        ratings[key] = _number(row["rating"], "rating", line, path)
    logger.info(f"{len(ratings)} avaliações humanas lidas de {path}")
    return ratings


def read_posets(path: PathLike) -> PosetSet:
    """
    Lê posets observados de um JSON: lista de {"elements", "edges", "count"?}
    (ou objeto com a chave "posets").

    Raises:
        ParseError: JSON inválido ou entrada sem elementos/arestas.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"não foi possível ler posets: {e}", path=str(path)) from e
    entries = data.get("posets") if isinstance(data, dict) else data
    if not isinstance(entries, list) or not entries:
        raise ParseError("esperada uma lista não vazia de posets", path=str(path))
    counts: Dict[Poset, int] = {}
    for k, entry in enumerate(entries):
        try:
            poset = Poset.from_dict(entry)
            count = int(entry.get("count", 1))
        except (KeyError, TypeError, AttributeError) as e:
            raise ParseError(f"poset {k} malformado: {e}", path=str(path)) from e
        counts[poset] = counts.get(poset, 0) + count
    logger.info(f"{sum(counts.values())} posets lidos de {path} ({len(counts)} distintos)")
    return PosetSet.from_counts(counts)
