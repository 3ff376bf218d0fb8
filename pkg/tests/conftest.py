"""
tests/conftest.py

Fixtures compartilhadas: os quatro posets do exemplo trabalhado da
profundidade ufg, registros pequenos e caminhos dos arquivos de dados.
"""

import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from src.poset import Poset, PosetSet
from tests.factories import METRICS_HEADER, write_csv

settings.register_profile(
    "fast", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))

DATA_DIR = Path(__file__).parent / "data"
ELEMENTS = ("m1", "m2", "m3", "m4")


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def worked_posets():
    """p1 = {m1>m2}, p2 = {m1>m3}, p3 = cadeia m1>m2>m3, p4 = {m1>m4}."""
    return {
        "p1": Poset.from_edges(ELEMENTS, [("m1", "m2")]),
        "p2": Poset.from_edges(ELEMENTS, [("m1", "m3")]),
        "p3": Poset.from_edges(ELEMENTS, [("m1", "m2"), ("m2", "m3")]),
        "p4": Poset.from_edges(ELEMENTS, [("m1", "m4")]),
    }


@pytest.fixture
def worked_observed(worked_posets) -> PosetSet:
    return PosetSet(worked_posets.values())


@pytest.fixture
def two_method_csv(tmp_path) -> Path:
    """12 instâncias: a domina em 6, b em 2 e 4 incomparáveis."""
    rows = []
    for k in range(6):
        rows += [f"i{k},a,-1.0,0.5,3.0", f"i{k},b,-2.0,0.5,3.0"]
    for k in range(6, 8):
        rows += [f"i{k},a,-2.0,0.5,3.0", f"i{k},b,-1.0,0.5,3.0"]
    for k in range(8, 12):
        rows += [f"i{k},a,-1.0,0.4,3.0", f"i{k},b,-2.0,0.6,3.0"]
    return write_csv(tmp_path / "two_methods.csv", METRICS_HEADER, rows)
