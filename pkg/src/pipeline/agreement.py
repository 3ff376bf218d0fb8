"""
src/pipeline/agreement.py

Concordância entre o ranking de Bradley-Terry (worths de Davidson) e o
ranking pela média do Q*Text por método.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

from src.davidson import WorthTable
from src.errors import NoSharedMethods
from src.qtext import spearman

logger = logging.getLogger(__name__)

DEFAULT_TOP_K = (1, 3, 5)


@dataclass
class AgreementReport:
    """Postos dos métodos nos dois rankings e a discrepância entre eles."""

    methods: List[str]
    davidson_order: List[str]
    qtext_order: List[str]
    davidson_rank: Dict[str, int]
    qtext_rank: Dict[str, int]
    discrepancy: Dict[str, int]
    rho: Optional[float]
    top_k: Dict[int, Dict[str, List[str]]] = field(default_factory=dict)

    def smallest_discrepancies(self, n: int = 5) -> List[str]:
        """Métodos com menor |discrepância| (desempate pelo posto de Davidson)."""
        return sorted(self.methods, key=lambda m: (abs(self.discrepancy[m]), self.davidson_rank[m]))[:n]

    def to_dict(self) -> dict:
        return {
            "davidson_order": self.davidson_order,
            "qtext_order": self.qtext_order,
            "rho": self.rho,
            "methods": [
                {
                    "method_id": m,
                    "davidson_rank": self.davidson_rank[m],
                    "qtext_rank": self.qtext_rank[m],
                    "discrepancy": self.discrepancy[m],
                }
                for m in self.davidson_order
            ],
            "top_k": {str(k): v for k, v in sorted(self.top_k.items())},
            "smallest_discrepancies": self.smallest_discrepancies(),
        }


def _order(scores: Mapping[str, float], methods: Sequence[str]) -> List[str]:
    return sorted(methods, key=lambda m: (-scores[m], m))


def agreement(
    worths: WorthTable, qtext_means: Mapping[str, float], top_k: Sequence[int] = DEFAULT_TOP_K
) -> AgreementReport:
    """
    Compara o ranking de Davidson com o ranking pela média do Q*Text.

    Args:
        worths: Tabela de worths ajustada.
        qtext_means: Média do Q*Text por método.
        top_k: Tamanhos dos conjuntos de topo comparados.

    Returns:
        AgreementReport: Postos (1 = melhor), discrepância assinada
        (posto Davidson - posto Q*Text) e o rho de Spearman entre os postos.

    Raises:
        NoSharedMethods: Se os dois lados não têm método em comum.
    """
    shared = sorted(set(worths.worths) & set(qtext_means))
    if not shared:
        raise NoSharedMethods("Worths e médias do Q*Text não compartilham métodos")
    dropped = (set(worths.worths) | set(qtext_means)) - set(shared)
    if dropped:
        logger.warning(f"{len(dropped)} métodos presentes em só um dos rankings foram ignorados")

    davidson_order = _order(worths.worths, shared)
    qtext_order = _order(qtext_means, shared)
    davidson_rank = {m: k for k, m in enumerate(davidson_order, 1)}
    qtext_rank = {m: k for k, m in enumerate(qtext_order, 1)}
    discrepancy = {m: davidson_rank[m] - qtext_rank[m] for m in shared}

    # com menos de três métodos a correlação não é definida
    rho = None
    if len(shared) >= 3:
        rho = spearman([davidson_rank[m] for m in shared], [qtext_rank[m] for m in shared])

    top = {}
    for k in sorted(set(top_k)):
        first, second = davidson_order[:k], qtext_order[:k]
        top[k] = {"davidson": first, "qtext": second, "shared": sorted(set(first) & set(second))}

    logger.info(f"Concordância calculada sobre {len(shared)} métodos: rho={rho}")
    return AgreementReport(
        methods=shared,
        davidson_order=davidson_order,
        qtext_order=qtext_order,
        davidson_rank=davidson_rank,
        qtext_rank=qtext_rank,
        discrepancy=discrepancy,
        rho=rho,
        top_k=top,
    )
