"""
src/errors.py

Hierarquia de exceções do projeto.

Dois ramos, que o Controller traduz em códigos de saída:

- `BenchmarkInputError` (subclasse de ValueError): dados ou configuração
  inválidos. Código de saída 1.
- `EngineError` (subclasse de RuntimeError): o motor não conseguiu produzir
  um resultado. Código de saída 2.
"""

from typing import Optional


class BenchmarkInputError(ValueError):
    """Erro de entrada (dados, arquivo ou configuração)."""


class EngineError(RuntimeError):
    """Erro de execução de um dos motores de ranking."""


# --- metrics -----------------------------------------------------------------

class SequenceTooShort(BenchmarkInputError):
    """Sequência curta demais para conter os n-gramas exigidos."""


class EmptySequence(BenchmarkInputError):
    """Sequência de log-probabilidades vazia."""


class NonFiniteValue(BenchmarkInputError):
    """Valor NaN/infinito ou fora do domínio (ex.: log-prob > 0)."""


# --- dominance / ingest ------------------------------------------------------

class MismatchedInstance(BenchmarkInputError):
    """Registros comparados pertencem a instâncias diferentes."""


class MismatchedMetrics(BenchmarkInputError):
    """Registros com conjuntos de métricas diferentes da configuração."""


class DuplicateRecord(BenchmarkInputError):
    """Mais de um registro para o mesmo par (instância, método)."""


class ParseError(BenchmarkInputError):
    """Falha de leitura de arquivo; guarda o número da linha quando conhecido."""

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        self.line = line
        self.path = path
        prefix = ""
        if path is not None:
            prefix += f"{path}"
        if line is not None:
            prefix += f":{line}"
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ConfigError(BenchmarkInputError):
    """Configuração de execução inválida."""


# --- poset / ufg ---------------------------------------------------------------

class ElementMismatch(BenchmarkInputError):
    """Posets definidos sobre conjuntos de elementos diferentes."""


class NotAPartialOrder(EngineError):
    """Relação induzida não é reflexiva, transitiva e antissimétrica."""


class NoUfgSets(EngineError):
    """Nenhum conjunto ufg observado: a profundidade não está definida."""


class CapExceeded(EngineError):
    """Orçamento de enumeração excedido."""


# --- davidson ------------------------------------------------------------------

class UnknownMethod(BenchmarkInputError):
    """Método ausente da tabela de worths."""


class DisconnectedGraph(EngineError):
    """Grafo de comparações desconexo: worths não identificáveis."""


class SeparationDetected(EngineError):
    """Algum método vence (ou perde) tudo: o MLE não existe."""


class NotConverged(EngineError):
    """Ajuste não convergiu dentro do limite de iterações."""


# --- qtext -----------------------------------------------------------------------

class DegenerateSpread(BenchmarkInputError):
    """Métrica constante no conjunto: normalização min-max indefinida."""


class OutOfRangeInput(BenchmarkInputError):
    """Métrica normalizada fora de [0, 1]."""


class InsufficientPairs(BenchmarkInputError):
    """Menos de três pares para a correlação de Spearman."""


class ConstantInput(BenchmarkInputError):
    """Um dos lados da correlação é constante."""


class KeyMisalignment(BenchmarkInputError):
    """Chaves dos scores e das avaliações humanas não se alinham."""


class DegenerateRatings(BenchmarkInputError):
    """Avaliações humanas constantes ou insuficientes."""


# --- pipeline --------------------------------------------------------------------

class NoSharedMethods(BenchmarkInputError):
    """Rankings a comparar não compartilham métodos."""


class EngineFailure(EngineError):
    """Erro de motor marcado com o nome do motor que falhou."""

    def __init__(self, engine: str, cause: Exception):
        self.engine = engine
        self.cause = cause
        super().__init__(f"[{engine}] {cause}")
