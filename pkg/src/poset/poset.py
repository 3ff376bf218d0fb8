"""
src/poset/poset.py

Representação de relações binárias e ordens parciais sobre um conjunto
ordenado de métodos, e o operador de fecho usado pela profundidade ufg:

    gamma(P) = { q poset | interseção(P) ⊆ q ⊆ união(P) }

Cada relação é guardada como uma matriz de incidência booleana empacotada em
inteiros: `rows[i]` tem o bit j ligado sse (elements[i], elements[j]) está na
relação. O par (a, b) significa "a está acima de b" (a domina b).
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Hashable, Iterable, Iterator, List, Sequence, Tuple, Union

from src.errors import BenchmarkInputError, ElementMismatch, NotAPartialOrder

MAX_ELEMENTS = 64


def _transitive_closure(rows: Sequence[int]) -> List[int]:
    """Fecho transitivo (Warshall) sobre linhas em bitmask."""
    closed = list(rows)
    for k, _ in enumerate(closed):
        bit = 1 << k
        row_k = closed[k]
        for i, row_i in enumerate(closed):
            if row_i & bit:
                closed[i] = row_i | row_k
    return closed


@dataclass(frozen=True)
class Relation:
    """Relação binária bruta (pode não ser uma ordem parcial)."""

    elements: Tuple[Hashable, ...]
    rows: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    def has(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def strict_pairs(self) -> List[Tuple[Hashable, Hashable]]:
        """Pares (a, b) com a != b, em ordem de linha."""
        return [
            (self.elements[i], self.elements[j])
            for i in range(self.size)
            for j in range(self.size)
            if i != j and self.has(i, j)
        ]

    def edge_count(self) -> int:
        return len(self.strict_pairs())

    def is_reflexive(self) -> bool:
        return all(self.has(i, i) for i in range(self.size))

    def is_antisymmetric(self) -> bool:
        return not any(
            self.has(i, j) and self.has(j, i)
            for i in range(self.size)
            for j in range(i + 1, self.size)
        )

    def is_transitive(self) -> bool:
        # (i, j) e (j, k) na relação => linha j contida na linha i
        for i, row_i in enumerate(self.rows):
            for j in range(self.size):
                if i != j and row_i >> j & 1 and self.rows[j] & ~row_i:
                    return False
        return True

    def is_partial_order(self) -> bool:
        return self.is_reflexive() and self.is_antisymmetric() and self.is_transitive()

    def issubset(self, other: "Relation") -> bool:
        if self.elements != other.elements:
            raise ElementMismatch("Relações sobre elementos diferentes")
        return all(mine & ~theirs == 0 for mine, theirs in zip(self.rows, other.rows))

    def canonical_key(self) -> str:
        """Serialização row-major dos bits; define distinção e desempate."""
        return "".join(
            "1" if self.has(i, j) else "0"
            for i in range(self.size)
            for j in range(self.size)
        )


@dataclass(frozen=True)
class Poset(Relation):
    """Ordem parcial: reflexiva, transitiva e antissimétrica. Imutável."""

    def __post_init__(self) -> None:
        if len(self.rows) != len(self.elements):
            raise BenchmarkInputError("Matriz de incidência com dimensão incorreta")
        if self.size > MAX_ELEMENTS:
            raise BenchmarkInputError(f"No máximo {MAX_ELEMENTS} elementos por poset")
        if len(set(self.elements)) != self.size:
            raise BenchmarkInputError("Elementos repetidos no poset")
        if not self.is_partial_order():
            raise NotAPartialOrder(
                f"Relação não é ordem parcial sobre {list(self.elements)}"
            )

    @classmethod
    def from_edges(
        cls,
        elements: Sequence[Hashable],
        edges: Iterable[Tuple[Hashable, Hashable]],
    ) -> "Poset":
        """
        Constrói um poset a partir de pares estritos, fechando-os
        reflexiva e transitivamente.

        Args:
            elements: Elementos em ordem canônica.
            edges: Pares (a, b) com "a acima de b".

        Returns:
            Poset: A ordem parcial gerada.

        Raises:
            NotAPartialOrder: Se o fecho transitivo quebra a antissimetria.
        """
        elements = tuple(elements)
        index = {element: i for i, element in enumerate(elements)}
        rows = [1 << i for i in range(len(elements))]
        for upper, lower in edges:
            try:
                rows[index[upper]] |= 1 << index[lower]
            except KeyError as e:
                raise ElementMismatch(f"Elemento desconhecido: {e}") from e
        return cls(elements, tuple(_transitive_closure(rows)))

    @classmethod
    def empty(cls, elements: Sequence[Hashable]) -> "Poset":
        """Ordem trivial (somente pares reflexivos)."""
        return cls.from_edges(elements, [])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "elements": list(self.elements),
            "edges": [list(pair) for pair in self.strict_pairs()],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Poset":
        return cls.from_edges(data["elements"], [tuple(edge) for edge in data.get("edges", [])])

    def __str__(self) -> str:
        pairs = ", ".join(f"{a} > {b}" for a, b in self.strict_pairs())
        return "{" + pairs + "}"


class PosetSet:
    """
    Multiconjunto de posets observados sobre os mesmos elementos.

    Posets distintos são mantidos em ordem de `canonical_key`; a
    multiplicidade de cada um conta quantas instâncias o produziram.
    """

    def __init__(self, posets: Iterable[Poset]):
        counts = Counter(posets)
        if not counts:
            raise BenchmarkInputError("PosetSet exige ao menos um poset")
        elements = {poset.elements for poset in counts}
        if len(elements) != 1:
            raise ElementMismatch("Posets de um PosetSet devem compartilhar os elementos")
        self.elements: Tuple[Hashable, ...] = elements.pop()
        self._counts: Dict[Poset, int] = dict(
            sorted(counts.items(), key=lambda item: item[0].canonical_key())
        )

    @classmethod
    def from_counts(cls, counts: Dict[Poset, int]) -> "PosetSet":
        expanded: List[Poset] = []
        for poset, count in counts.items():
            if count < 1:
                raise BenchmarkInputError("Multiplicidades devem ser >= 1")
            expanded.extend([poset] * count)
        return cls(expanded)

    @property
    def distinct(self) -> List[Poset]:
        return list(self._counts)

    @property
    def total(self) -> int:
        return sum(self._counts.values())

    def multiplicity(self, poset: Poset) -> int:
        return self._counts.get(poset, 0)

    def frequency(self, poset: Poset) -> Fraction:
        """Frequência empírica nu_n(p) = multiplicidade / total."""
        return Fraction(self.multiplicity(poset), self.total)

    def items(self) -> List[Tuple[Poset, int]]:
        return list(self._counts.items())

    def __len__(self) -> int:
        return len(self._counts)

    def __iter__(self) -> Iterator[Poset]:
        return iter(self._counts)

    def __contains__(self, poset: object) -> bool:
        return poset in self._counts


PosetCollection = Union[PosetSet, Iterable[Poset]]


def _members(posets: PosetCollection) -> List[Poset]:
    members = posets.distinct if isinstance(posets, PosetSet) else list(dict.fromkeys(posets))
    if not members:
        raise BenchmarkInputError("Coleção de posets vazia")
    elements = members[0].elements
    if any(p.elements != elements for p in members):
        raise ElementMismatch("Posets sobre conjuntos de elementos diferentes")
    return members


def intersect(posets: PosetCollection) -> Poset:
    """Interseção (conjuntista) das relações; sempre uma ordem parcial."""
    members = _members(posets)
    rows = list(members[0].rows)
    for poset in members[1:]:
        rows = [mine & theirs for mine, theirs in zip(rows, poset.rows)]
    return Poset(members[0].elements, tuple(rows))


def union_relation(posets: PosetCollection) -> Relation:
    """União das relações; o resultado pode não ser uma ordem parcial."""
    members = _members(posets)
    rows = list(members[0].rows)
    for poset in members[1:]:
        rows = [mine | theirs for mine, theirs in zip(rows, poset.rows)]
    return Relation(members[0].elements, tuple(rows))


def posets_between(lower: Relation, upper: Relation) -> Iterator[Poset]:
    """
    Gera, em ordem determinística, todos os posets q com lower ⊆ q ⊆ upper.

    Busca com retrocesso sobre os pares livres (em upper e fora de lower);
    um ramo é podado assim que o fecho transitivo das escolhas exige um par
    fora de upper, um par já excluído ou quebra a antissimetria.
    """
    if not lower.issubset(upper):
        return
    m = lower.size
    upper_rows = upper.rows
    free = [
        (i, j)
        for i in range(m)
        for j in range(m)
        if i != j and upper_rows[i] >> j & 1 and not lower.rows[i] >> j & 1
    ]
    start = [row | (1 << i) for i, row in enumerate(lower.rows)]

    def consistent(rows: List[int], excluded: List[int]) -> bool:
        closed = _transitive_closure(rows)
        for i, row in enumerate(closed):
            if row & ~upper_rows[i] or row & excluded[i]:
                return False
            for j in range(i + 1, m):
                if row >> j & 1 and closed[j] >> i & 1:
                    return False
        return True

    def search(k: int, rows: List[int], excluded: List[int]) -> Iterator[Poset]:
        if k == len(free):
            yield Poset(lower.elements, tuple(rows))
            return
        i, j = free[k]
        without = list(excluded)
        without[i] |= 1 << j
        if consistent(rows, without):
            yield from search(k + 1, rows, without)
        with_pair = list(rows)
        with_pair[i] |= 1 << j
        if consistent(with_pair, excluded):
            yield from search(k + 1, with_pair, excluded)

    if consistent(start, [0] * m):
        yield from search(0, start, [0] * m)


def closure(posets: PosetCollection) -> List[Poset]:
    """
    Enumera gamma(P). O tamanho pode ser exponencial no número de pares
    livres; cálculos de profundidade usam `contains_in_closure`.
    """
    return list(posets_between(intersect(posets), union_relation(posets)))


def contains_in_closure(posets: PosetCollection, candidate: Poset) -> bool:
    """Testa q ∈ gamma(P) via dois testes de inclusão, sem enumerar o fecho."""
    members = _members(posets)
    if candidate.elements != members[0].elements:
        raise ElementMismatch("Candidato sobre elementos diferentes dos posets")
    return intersect(members).issubset(candidate) and candidate.issubset(union_relation(members))
