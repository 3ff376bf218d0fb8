"""
src/utils/run_config.py

Configuração declarativa de uma execução (arquivo JSON + flags da CLI).
"""

import json
from dataclasses import asdict, dataclass, field, fields, is_dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type, TypeVar

from src.errors import ConfigError

ENGINES: Tuple[str, ...] = ("davidson", "ufg", "qtext")
FORMATS: Tuple[str, ...] = ("json", "table")

T = TypeVar("T")


@dataclass
class DavidsonSection:
    """Seção "davidson" do arquivo de configuração."""
    max_iterations: int = 500
    tolerance: float = 1e-10
    zero_count_handling: str = "error"
    strict: bool = False


@dataclass
class UfgSection:
    """Seção "ufg": limite de membros por conjunto e de métodos analisados."""
    max_size: int = 4
    method_limit: int = 8
    mode: str = "weighted"
    combination_budget: Optional[int] = 2_000_000
    candidate_budget: Optional[int] = None
    posets_path: Optional[str] = None


@dataclass
class QTextSection:
    """Seção "qtext": origem dos parâmetros (arquivo ou ajuste) e normalização."""
    params_source: str = "file"
    params_path: Optional[str] = None
    ratings_path: Optional[str] = None
    max_trials: int = 10_000
    perturbation_scale: float = 0.1
    restarts: int = 1
    per_dataset_normalization: bool = False


@dataclass
class RunConfig:
    """Configuração completa de uma execução."""

    inputs: List[str] = field(default_factory=list)
    input_format: str = "metrics"
    directions: Dict[str, str] = field(
        default_factory=lambda: {
            "coherence": "higher_is_better",
            "diversity": "higher_is_better",
            "perplexity": "lower_is_better",
        }
    )
    eq_tolerance: float = 0.0
    engines: List[str] = field(default_factory=lambda: list(ENGINES))
    methods: Optional[List[str]] = None
    dominance_share: float = 0.9
    output_dir: str = "./reports"
    seed: int = 0
    format: str = "json"
    davidson: DavidsonSection = field(default_factory=DavidsonSection)
    ufg: UfgSection = field(default_factory=UfgSection)
    qtext: QTextSection = field(default_factory=QTextSection)

    def __post_init__(self) -> None:
        unknown = sorted(set(self.engines) - set(ENGINES))
        if unknown:
            raise ConfigError(f"Motores desconhecidos: {unknown} (use {ENGINES})")
        if self.format not in FORMATS:
            raise ConfigError(f"Formato inválido: {self.format!r} (use {FORMATS})")
        if self.input_format not in ("metrics", "raw"):
            raise ConfigError(f"input_format inválido: {self.input_format!r}")
        if self.seed < 0:
            raise ConfigError("seed deve ser >= 0")
        if not 0.0 < self.dominance_share <= 1.0:
            raise ConfigError("dominance_share deve estar em (0, 1]")
        if self.ufg.mode not in ("weighted", "uniform_count"):
            raise ConfigError(f"Modo ufg inválido: {self.ufg.mode!r}")
        if self.ufg.method_limit < 2:
            raise ConfigError("ufg.method_limit deve ser >= 2")
        if self.qtext.params_source not in ("file", "tune"):
            raise ConfigError(f"qtext.params_source inválido: {self.qtext.params_source!r}")
        if "qtext" in self.engines and self.qtext.params_source == "tune" and not self.qtext.ratings_path:
            raise ConfigError("qtext.params_source='tune' exige qtext.ratings_path")

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Cópia com os campos não nulos de `overrides` substituídos."""
        values = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _build(cls: Type[T], data: Dict[str, Any], where: str) -> T:
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: esperado um objeto JSON")
    known = {f.name: f for f in fields(cls)}
    unknown = sorted(set(data) - set(known))
    if unknown:
        raise ConfigError(f"{where}: chaves desconhecidas {unknown}")
    values = {}
    for key, value in data.items():
        default = known[key].default_factory() if callable(known[key].default_factory) else None
        if is_dataclass(default):
            value = _build(type(default), value, f"{where}.{key}")
        values[key] = value
    try:
        return cls(**values)
    except TypeError as e:
        raise ConfigError(f"{where}: {e}") from e


def load_run_config(path: Optional[str] = None) -> RunConfig:
    """
    Carrega a configuração de um arquivo JSON; sem caminho, usa os padrões.

    Args:
        path: Caminho do arquivo JSON.

    Returns:
        RunConfig: Configuração validada.

    Raises:
        ConfigError: Arquivo ilegível, JSON inválido ou chave desconhecida.
    """
    if path is None:
        return RunConfig()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Não foi possível ler a configuração {path}: {e}") from e
    return _build(RunConfig, data, "config")
