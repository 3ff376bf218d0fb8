"""
src/dominance/compare.py

Comparação por dominância de Pareto entre métodos, instância a instância:

- `compare`: dominância entre dois registros da mesma instância.
- `instance_poset`: ordem parcial induzida pelos registros de uma instância.
- `tally`: contagens por par de métodos (vitórias de cada lado e empates).
- `dominance_summary`: visão agregada das dominâncias estritas.
"""

import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from src.errors import (
    BenchmarkInputError,
    DuplicateRecord,
    ElementMismatch,
    MismatchedInstance,
    MismatchedMetrics,
)
from src.poset import Poset, PosetSet
from .models import (
    ComparisonTally,
    DominanceConfig,
    DominanceOutcome,
    MetricRecord,
)

logger = logging.getLogger(__name__)


def compare(a: MetricRecord, b: MetricRecord, config: DominanceConfig = DominanceConfig()) -> DominanceOutcome:
    """
    Compara dois registros da mesma instância.

    `a` vence sse é pelo menos tão bom quanto `b` em todas as métricas e
    estritamente melhor em ao menos uma. Empate em todas as métricas é
    indiferença; preferências conflitantes, incomparabilidade.

    Args:
        a: Registro do método i.
        b: Registro do método j.
        config: Sentidos das métricas e tolerância de igualdade.

    Returns:
        DominanceOutcome: I_WINS, J_WINS, INDIFFERENT ou INCOMPARABLE.
    """
    if a.instance_id != b.instance_id:
        raise MismatchedInstance(f"Instâncias diferentes: {a.instance_id!r} e {b.instance_id!r}")
    expected = set(config.metric_names)
    if set(a.values) != expected or set(b.values) != expected:
        raise MismatchedMetrics(
            f"Métricas esperadas {sorted(expected)}, recebidas "
            f"{sorted(a.values)} e {sorted(b.values)}"
        )

    a_better = b_better = 0
    for metric in config.directions:
        x, y = a.values[metric.name], b.values[metric.name]
        if abs(x - y) <= config.eq_tolerance:
            continue
        if metric.better(x, y):
            a_better += 1
        else:
            b_better += 1

    if a_better and not b_better:
        return DominanceOutcome.I_WINS
    if b_better and not a_better:
        return DominanceOutcome.J_WINS
    if not a_better and not b_better:
        return DominanceOutcome.INDIFFERENT
    return DominanceOutcome.INCOMPARABLE


def _index_by_method(records: Iterable[MetricRecord]) -> Dict[str, MetricRecord]:
    by_method: Dict[str, MetricRecord] = {}
    for record in records:
        if record.method_id in by_method:
            raise DuplicateRecord(
                f"Registro duplicado para ({record.instance_id!r}, {record.method_id!r})"
            )
        by_method[record.method_id] = record
    return by_method


def group_by_instance(records: Iterable[MetricRecord]) -> Dict[Hashable, Dict[str, MetricRecord]]:
    """Agrupa registros por instância, rejeitando pares (instância, método) repetidos."""
    grouped: Dict[Hashable, List[MetricRecord]] = defaultdict(list)
    for record in records:
        grouped[record.instance_id].append(record)
    return {instance: _index_by_method(rows) for instance, rows in grouped.items()}


def instance_poset(
    records: Sequence[MetricRecord],
    config: DominanceConfig = DominanceConfig(),
    methods: Optional[Sequence[str]] = None,
) -> Poset:
    """
    Ordem parcial dos métodos em uma instância.

    Contém (i, j) sempre que `compare` dá vitória a i; pares indiferentes não
    geram aresta. As arestas são fechadas transitivamente e a antissimetria é
    verificada antes do retorno.

    Args:
        records: Registros de uma única instância, um por método.
        config: Configuração de dominância.
        methods: Ordem dos elementos (padrão: ids ordenados).

    Returns:
        Poset: Ordem parcial sobre os métodos.

    Raises:
        NotAPartialOrder: Se a relação induzida não é uma ordem parcial.
    """
    by_method = _index_by_method(records)
    if len(by_method) < 2:
        raise BenchmarkInputError("instance_poset exige ao menos dois métodos")
    elements = tuple(methods) if methods is not None else tuple(sorted(by_method))
    if set(elements) != set(by_method):
        raise ElementMismatch("Métodos da instância não correspondem aos elementos pedidos")

    edges = []
    for first, second in itertools.combinations(elements, 2):
        outcome = compare(by_method[first], by_method[second], config)
        if outcome is DominanceOutcome.I_WINS:
            edges.append((first, second))
        elif outcome is DominanceOutcome.J_WINS:
            edges.append((second, first))
    return Poset.from_edges(elements, edges)


def instance_posets(
    records: Iterable[MetricRecord],
    config: DominanceConfig = DominanceConfig(),
    methods: Optional[Sequence[str]] = None,
) -> PosetSet:
    """
    Posets de todas as instâncias completas para um subconjunto de métodos.

    Instâncias sem registro para algum dos métodos pedidos são ignoradas.
    """
    grouped = group_by_instance(records)
    if methods is None:
        methods = sorted({m for rows in grouped.values() for m in rows})
    elements = tuple(sorted(methods))

    posets = []
    skipped = 0
    for instance in sorted(grouped, key=str):
        rows = grouped[instance]
        if not set(elements) <= set(rows):
            skipped += 1
            continue
        posets.append(instance_poset([rows[m] for m in elements], config, elements))
    if skipped:
        logger.warning(f"{skipped} instâncias ignoradas por não conterem todos os métodos")
    if not posets:
        raise BenchmarkInputError("Nenhuma instância contém todos os métodos pedidos")
    logger.info(f"{len(posets)} posets construídos sobre {len(elements)} métodos")
    return PosetSet(posets)


def tally(
    records: Iterable[MetricRecord],
    config: DominanceConfig = DominanceConfig(),
) -> List[ComparisonTally]:
    """
    Conta, por par não ordenado de métodos, vitórias e empates.

    Cada par só é contado nas instâncias em que os dois métodos aparecem;
    indiferença e incomparabilidade incrementam ambas `ties`.

    Args:
        records: Todos os registros.
        config: Configuração de dominância.

    Returns:
        Lista de ComparisonTally ordenada pelo par (method_i, method_j).

    Raises:
        DuplicateRecord: Se uma instância tem dois registros do mesmo método.
    """
    grouped = group_by_instance(records)
    methods = sorted({m for rows in grouped.values() for m in rows})
    counts: Dict[Tuple[str, str], ComparisonTally] = {
        pair: ComparisonTally(*pair) for pair in itertools.combinations(methods, 2)
    }

    for rows in grouped.values():
        present = sorted(rows)
        for first, second in itertools.combinations(present, 2):
            entry = counts[(first, second)]
            outcome = compare(rows[first], rows[second], config)
            if outcome is DominanceOutcome.I_WINS:
                entry.wins_i += 1
            elif outcome is DominanceOutcome.J_WINS:
                entry.wins_j += 1
            else:
                entry.ties += 1
                if outcome is DominanceOutcome.INDIFFERENT:
                    entry.indifferent += 1

    logger.debug(f"Contagens calculadas para {len(counts)} pares em {len(grouped)} instâncias")
    return list(counts.values())


def merge_tallies(
    parts: Iterable[Sequence[ComparisonTally]], methods: Iterable[str] = ()
) -> List[ComparisonTally]:
    """
    Soma, por par, contagens calculadas sobre partes disjuntas de instâncias.

    Args:
        parts: Listas de contagens (por exemplo, uma por arquivo de entrada).
        methods: Métodos cujos pares entram mesmo sem comparações.

    Returns:
        Lista de ComparisonTally ordenada pelo par, igual à de `tally` sobre
        a união das partes.
    """
    pooled: Dict[Tuple[str, str], ComparisonTally] = {
        pair: ComparisonTally(*pair) for pair in itertools.combinations(sorted(set(methods)), 2)
    }
    for part in parts:
        for entry in part:
            key = (entry.method_i, entry.method_j)
            pooled[key] = pooled[key].merge(entry) if key in pooled else entry
    return [pooled[key] for key in sorted(pooled)]


@dataclass
class DominanceSummary:
    """Resumo das dominâncias estritas entre métodos."""

    methods: List[str]
    ordered_comparisons: int
    unordered_comparisons: int
    full_dominance: List[Tuple[str, str, int]] = field(default_factory=list)
    share: float = 0.9
    at_least_share: int = 0
    never_dominates: int = 0

    def to_dict(self) -> dict:
        return {
            "methods": self.methods,
            "ordered_comparisons": self.ordered_comparisons,
            "unordered_comparisons": self.unordered_comparisons,
            "full_dominance": [
                {"winner": w, "loser": l, "count": c} for w, l, c in self.full_dominance
            ],
            "share": self.share,
            "at_least_share": self.at_least_share,
            "never_dominates": self.never_dominates,
        }


def dominance_summary(tallies: Sequence[ComparisonTally], share: float = 0.9) -> DominanceSummary:
    """
    Agrega as contagens em visões ordenadas (i sobre j e j sobre i).

    - full_dominance: pares em que um método domina estritamente o outro em
      todas as instâncias co-observadas.
    - at_least_share: comparações ordenadas com dominância estrita em ao menos
      `share` das instâncias.
    - never_dominates: comparações ordenadas com zero vitórias estritas.
    """
    methods = sorted({t.method_i for t in tallies} | {t.method_j for t in tallies})
    summary = DominanceSummary(
        methods=methods,
        ordered_comparisons=len(methods) * (len(methods) - 1),
        unordered_comparisons=math.comb(len(methods), 2),
        share=share,
    )
    for entry in tallies:
        if entry.total == 0:
            continue
        for winner, loser, wins in (
            (entry.method_i, entry.method_j, entry.wins_i),
            (entry.method_j, entry.method_i, entry.wins_j),
        ):
            if wins == entry.total:
                summary.full_dominance.append((winner, loser, wins))
            if wins >= share * entry.total:
                summary.at_least_share += 1
            if wins == 0:
                summary.never_dominates += 1
    summary.full_dominance.sort(key=lambda item: (-item[2], item[0], item[1]))
    return summary
