"""
src/dominance/models.py

Tipos de dados da comparação por dominância entre métodos de decodificação.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Hashable, Mapping, Tuple

from src.errors import BenchmarkInputError, ConfigError


class Direction(str, Enum):
    """Sentido de preferência de uma métrica."""

    HIGHER_IS_BETTER = "higher_is_better"
    LOWER_IS_BETTER = "lower_is_better"


@dataclass(frozen=True)
class MetricDirection:
    """Nome da métrica e seu sentido de preferência."""

    name: str
    direction: Direction = Direction.HIGHER_IS_BETTER

    def better(self, x: float, y: float) -> bool:
        """True se x é estritamente melhor que y nesta métrica."""
        if self.direction is Direction.HIGHER_IS_BETTER:
            return x > y
        return x < y


DEFAULT_DIRECTIONS: Tuple[MetricDirection, ...] = (
    MetricDirection("coherence", Direction.HIGHER_IS_BETTER),
    MetricDirection("diversity", Direction.HIGHER_IS_BETTER),
    MetricDirection("perplexity", Direction.LOWER_IS_BETTER),
)


@dataclass(frozen=True)
class DominanceConfig:
    """Configuração da regra de dominância.

    eq_tolerance: dois valores são "iguais" sse |x - y| <= eq_tolerance.
    """

    directions: Tuple[MetricDirection, ...] = DEFAULT_DIRECTIONS
    eq_tolerance: float = 0.0

    def __post_init__(self) -> None:
        names = [d.name for d in self.directions]
        if not names:
            raise ConfigError("Ao menos uma métrica é necessária")
        if len(names) != len(set(names)):
            raise ConfigError(f"Métricas repetidas na configuração: {names}")
        if self.eq_tolerance < 0:
            raise ConfigError("eq_tolerance deve ser >= 0")

    @property
    def metric_names(self) -> Tuple[str, ...]:
        return tuple(d.name for d in self.directions)

    @classmethod
    def from_mapping(cls, directions: Mapping[str, str], eq_tolerance: float = 0.0) -> "DominanceConfig":
        """Constrói a configuração a partir de {"metric": "higher_is_better" | ...}."""
        try:
            parsed = tuple(
                MetricDirection(name, Direction(value)) for name, value in sorted(directions.items())
            )
        except ValueError as e:
            raise ConfigError(f"Sentido de métrica inválido: {e}") from e
        return cls(parsed, eq_tolerance)


@dataclass(frozen=True)
class MetricRecord:
    """Linha (instância, método) com os valores das métricas."""

    instance_id: Hashable
    method_id: str
    values: Dict[str, float] = field(default_factory=dict)


class DominanceOutcome(str, Enum):
    """Resultado da comparação de dois registros da mesma instância."""

    I_WINS = "i_wins"
    J_WINS = "j_wins"
    INDIFFERENT = "indifferent"
    INCOMPARABLE = "incomparable"


@dataclass
class ComparisonTally:
    """
    Contagens de um par não ordenado (method_i < method_j).

    `ties` agrega indiferença e incomparabilidade; `indifferent` guarda só
    a parte de igualdade exata, para relatório.
    """

    method_i: str
    method_j: str
    wins_i: int = 0
    wins_j: int = 0
    ties: int = 0
    indifferent: int = 0

    @property
    def total(self) -> int:
        return self.wins_i + self.wins_j + self.ties

    def merge(self, other: "ComparisonTally") -> "ComparisonTally":
        """Soma associativa de contagens do mesmo par."""
        if (self.method_i, self.method_j) != (other.method_i, other.method_j):
            raise BenchmarkInputError("Só é possível somar contagens do mesmo par")
        return ComparisonTally(
            self.method_i,
            self.method_j,
            self.wins_i + other.wins_i,
            self.wins_j + other.wins_j,
            self.ties + other.ties,
            self.indifferent + other.indifferent,
        )

    def to_dict(self) -> dict:
        return {
            "method_i": self.method_i,
            "method_j": self.method_j,
            "wins_i": self.wins_i,
            "wins_j": self.wins_j,
            "ties": self.ties,
            "indifferent": self.indifferent,
        }
