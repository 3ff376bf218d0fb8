"""
Modulo de inicialização do pacote dominance.
"""
from typing import List

from .models import (
    DEFAULT_DIRECTIONS,
    ComparisonTally,
    Direction,
    DominanceConfig,
    DominanceOutcome,
    MetricDirection,
    MetricRecord,
)
from .compare import (
    DominanceSummary,
    compare,
    dominance_summary,
    group_by_instance,
    instance_poset,
    instance_posets,
    merge_tallies,
    tally,
)

__all__: List[str] = [
    "DEFAULT_DIRECTIONS",
    "ComparisonTally",
    "Direction",
    "DominanceConfig",
    "DominanceOutcome",
    "DominanceSummary",
    "MetricDirection",
    "MetricRecord",
    "compare",
    "dominance_summary",
    "group_by_instance",
    "instance_poset",
    "instance_posets",
    "merge_tallies",
    "tally",
]
