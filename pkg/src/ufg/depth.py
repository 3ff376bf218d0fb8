"""
src/ufg/depth.py

Profundidade ufg (union-free generic) empírica sobre posets observados.

Um conjunto P de posets distintos (|P| >= 2) é ufg quando:

- P está estritamente contido em gamma(P) (fecho próprio);
- gamma(P) não é a união dos fechos de subconjuntos próprios de P.

Como gamma é crescente, a segunda condição equivale a existir q ∈ gamma(P) fora de
gamma(P \\ {p}) para todo p ∈ P. Um tal q nunca pertence a P, logo a mesma
testemunha garante a primeira. A busca percorre os posets entre a interseção e a
união de P sem materializar nenhum fecho.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.errors import BenchmarkInputError, CapExceeded, ElementMismatch, NoUfgSets
from src.poset import Poset, PosetSet, intersect, posets_between, union_relation

logger = logging.getLogger(__name__)

DEFAULT_MAX_SIZE = 4


class DepthMode(str, Enum):
    """Ponderação da soma da profundidade."""

    WEIGHTED = "weighted"
    UNIFORM_COUNT = "uniform_count"


@dataclass(frozen=True)
class UfgSet:
    """Conjunto ufg de posets observados, em ordem canônica."""

    members: Tuple[Poset, ...]

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def bounds(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Linhas da interseção e da união dos membros."""
        return intersect(self.members).rows, union_relation(self.members).rows

    def contains(self, candidate: Poset) -> bool:
        """candidate ∈ gamma(members)."""
        if candidate.elements != self.members[0].elements:
            raise ElementMismatch("Candidato sobre elementos diferentes dos membros")
        lower, upper = self.bounds
        return _inside(candidate.rows, lower, upper)


def _leave_one_out_bounds(members: Sequence[Poset]) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    bounds = []
    for skip in range(len(members)):
        rest = [p for k, p in enumerate(members) if k != skip]
        bounds.append((intersect(rest).rows, union_relation(rest).rows))
    return bounds


def _inside(rows: Sequence[int], lower: Sequence[int], upper: Sequence[int]) -> bool:
    return all(lo & ~q == 0 and q & ~up == 0 for q, lo, up in zip(rows, lower, upper))


def is_ufg(posets: Sequence[Poset]) -> bool:
    """
    Decide se um conjunto de posets distintos é ufg.

    Args:
        posets: Dois ou mais posets distintos sobre os mesmos elementos.

    Returns:
        bool: True se o fecho é próprio e irredutível.
    """
    members = list(posets)
    if len(members) < 2:
        raise BenchmarkInputError("is_ufg exige ao menos dois posets")
    if len(set(members)) != len(members):
        raise BenchmarkInputError("is_ufg exige posets distintos")
    if any(p.elements != members[0].elements for p in members):
        raise ElementMismatch("Posets sobre conjuntos de elementos diferentes")

    lower = intersect(members)
    upper = union_relation(members)
    sub_bounds = _leave_one_out_bounds(members)

    # algum P \ {p} com o mesmo fecho de P: decomponível
    if any(lo == lower.rows and up == upper.rows for lo, up in sub_bounds):
        return False

    for candidate in posets_between(lower, upper):
        if not any(_inside(candidate.rows, lo, up) for lo, up in sub_bounds):
            return True
    return False


@dataclass
class UfgFamily:
    """Conjuntos ufg enumerados e o limite aplicado."""

    sets: List[UfgSet]
    max_size: int
    truncated: bool


def enumerate_ufg(
    observed: PosetSet, max_size: int = DEFAULT_MAX_SIZE, budget: Optional[int] = None
) -> UfgFamily:
    """
    Enumera os conjuntos ufg formados por posets observados distintos.

    Args:
        observed: Posets observados (com multiplicidades).
        max_size: Maior cardinalidade de conjunto testada.
        budget: Máximo de combinações a testar; acima disso CapExceeded.

    Returns:
        UfgFamily: Conjuntos em ordem determinística (tamanho e chaves
        canônicas); `truncated` indica que havia conjuntos maiores possíveis.
    """
    if max_size < 2:
        raise BenchmarkInputError("max_size deve ser >= 2")
    distinct = observed.distinct
    combinations = sum(math.comb(len(distinct), k) for k in range(2, min(max_size, len(distinct)) + 1))
    if budget is not None and combinations > budget:
        raise CapExceeded(
            f"{combinations} combinações de posets excedem o orçamento de {budget}; "
            "reduza o conjunto de métodos ou max_size"
        )
    truncated = max_size < len(distinct)
    if truncated:
        logger.warning(
            f"Enumeração ufg limitada a {max_size} membros "
            f"({len(distinct)} posets distintos observados)"
        )

    sets: List[UfgSet] = []
    for size in range(2, min(max_size, len(distinct)) + 1):
        for combo in itertools.combinations(distinct, size):
            if is_ufg(combo):
                sets.append(UfgSet(tuple(combo)))
    logger.info(f"{len(sets)} conjuntos ufg encontrados entre {len(distinct)} posets distintos")
    return UfgFamily(sets=sets, max_size=max_size, truncated=truncated)


def _set_weight(ufg_set: UfgSet, weights: Mapping[Poset, Fraction], mode: DepthMode) -> Fraction:
    if mode is DepthMode.UNIFORM_COUNT:
        return Fraction(1)
    weight = Fraction(1)
    for member in ufg_set.members:
        weight *= weights.get(member, Fraction(0))
    return weight


def depth_over_family(
    family: Sequence[UfgSet],
    weights: Mapping[Poset, Fraction],
    target: Poset,
    mode: DepthMode = DepthMode.WEIGHTED,
) -> Fraction:
    """
    Soma da profundidade sobre uma família explícita de conjuntos ufg.

    D(p) = c * soma_{S : p ∈ gamma(S)} prod_{q ∈ S} nu(q),
    c = 1 / soma_S prod_{q ∈ S} nu(q). Em UNIFORM_COUNT todo produto vale 1.

    Returns:
        Fraction: Profundidade exata; zero se todos os produtos são zero.
    """
    if not family:
        raise NoUfgSets("Nenhum conjunto ufg: profundidade indefinida")
    total = Fraction(0)
    supporting = Fraction(0)
    for ufg_set in family:
        weight = _set_weight(ufg_set, weights, mode)
        total += weight
        if weight and ufg_set.contains(target):
            supporting += weight
    if total == 0:
        return Fraction(0)
    return supporting / total


def _weights(observed: PosetSet) -> Dict[Poset, Fraction]:
    return {poset: observed.frequency(poset) for poset in observed}


def depth(
    observed: PosetSet,
    target: Poset,
    mode: DepthMode = DepthMode.WEIGHTED,
    max_size: int = DEFAULT_MAX_SIZE,
    family: Optional[UfgFamily] = None,
) -> float:
    """
    Profundidade ufg empírica de um poset.

    Args:
        observed: Posets observados.
        target: Poset avaliado (mesmos elementos).
        mode: WEIGHTED (frequências empíricas) ou UNIFORM_COUNT.
        max_size: Limite de enumeração, se `family` não for dado.
        family: Família ufg já enumerada, para reaproveitamento.

    Returns:
        float: Valor em [0, 1].

    Raises:
        NoUfgSets: Se não há conjunto ufg entre os observados.
    """
    if target.elements != observed.elements:
        raise ElementMismatch("Poset alvo sobre elementos diferentes dos observados")
    family = family or enumerate_ufg(observed, max_size)
    return float(depth_over_family(family.sets, _weights(observed), target, mode))


@dataclass
class DepthEntry:
    """Profundidade de um candidato."""

    poset: Poset
    depth: Fraction
    multiplicity: int
    supporting_sets: int

    def to_dict(self) -> dict:
        return {
            "poset": self.poset.to_dict(),
            "key": self.poset.canonical_key(),
            "depth": float(self.depth),
            "depth_exact": str(self.depth),
            "multiplicity": self.multiplicity,
            "supporting_sets": self.supporting_sets,
        }


@dataclass
class DepthResult:
    """Profundidades de todos os candidatos sob o mesmo S_obs."""

    entries: List[DepthEntry]
    mode: DepthMode
    ufg_set_count: int
    normalizing_constant: Fraction
    max_size: int
    truncated: bool
    most_central: Optional[DepthEntry] = None
    most_outlying: Optional[DepthEntry] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "ufg_set_count": self.ufg_set_count,
            "normalizing_constant": str(self.normalizing_constant),
            "max_size": self.max_size,
            "truncated": self.truncated,
            "most_central": self.most_central.poset.canonical_key() if self.most_central else None,
            "most_outlying": self.most_outlying.poset.canonical_key() if self.most_outlying else None,
            "entries": [entry.to_dict() for entry in self.entries],
            "notes": self.notes,
        }


def candidate_universe(observed: PosetSet, budget: int) -> List[Poset]:
    """Todos os posets entre a interseção e a união globais, até `budget`."""
    candidates = []
    for poset in posets_between(intersect(observed), union_relation(observed)):
        candidates.append(poset)
        if len(candidates) > budget:
            raise CapExceeded(f"Universo de candidatos excede o orçamento de {budget} posets")
    return candidates


def rank_by_depth(
    observed: PosetSet,
    candidates: Optional[Sequence[Poset]] = None,
    mode: DepthMode = DepthMode.WEIGHTED,
    max_size: int = DEFAULT_MAX_SIZE,
    budget: Optional[int] = None,
) -> DepthResult:
    """
    Calcula a profundidade de cada candidato e identifica o mais central e o
    mais atípico (desempate pela chave canônica).

    Args:
        observed: Posets observados.
        candidates: Candidatos (padrão: os posets observados distintos).
        mode: Modo de ponderação.
        max_size: Limite de enumeração.
        budget: Orçamento de combinações da enumeração.

    Returns:
        DepthResult: Profundidades, contagem de conjuntos ufg e a constante c_n.
    """
    family = enumerate_ufg(observed, max_size, budget)
    if not family.sets:
        raise NoUfgSets(
            f"Nenhum conjunto ufg entre {len(observed)} posets distintos: profundidade indefinida"
        )
    weights = _weights(observed)
    candidates = list(candidates) if candidates is not None else observed.distinct
    for candidate in candidates:
        if candidate.elements != observed.elements:
            raise ElementMismatch("Candidato sobre elementos diferentes dos observados")

    set_weights = [(s, _set_weight(s, weights, mode)) for s in family.sets]
    total = sum((w for _, w in set_weights), Fraction(0))
    entries = []
    for candidate in sorted(set(candidates), key=lambda p: p.canonical_key()):
        supporting = [w for s, w in set_weights if s.contains(candidate)]
        entries.append(
            DepthEntry(
                poset=candidate,
                depth=(sum(supporting, Fraction(0)) / total) if total else Fraction(0),
                multiplicity=observed.multiplicity(candidate),
                supporting_sets=len(supporting),
            )
        )

    result = DepthResult(
        entries=entries,
        mode=mode,
        ufg_set_count=len(family.sets),
        normalizing_constant=(1 / total) if total else Fraction(0),
        max_size=max_size,
        truncated=family.truncated,
    )
    # entries já estão em ordem de chave: min/max estáveis desempatam por ela
    result.most_central = max(entries, key=lambda e: e.depth) if entries else None
    result.most_outlying = min(entries, key=lambda e: e.depth) if entries else None
    if family.truncated:
        result.notes.append(f"enumeração limitada a conjuntos com até {max_size} membros")
    return result
