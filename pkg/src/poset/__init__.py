"""
Modulo de inicialização do pacote poset.
"""
from typing import List

from .poset import (
    Poset,
    PosetSet,
    Relation,
    closure,
    contains_in_closure,
    intersect,
    posets_between,
    union_relation,
)

__all__: List[str] = [
    "Poset",
    "PosetSet",
    "Relation",
    "closure",
    "contains_in_closure",
    "intersect",
    "posets_between",
    "union_relation",
]
