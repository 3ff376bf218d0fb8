"""
src/controller/handlers/davidson_handler.py

Handlers dos verbos `bt` (ajuste sobre as tabelas) e `simulate`
(contagens sorteadas do modelo, reajustadas).
"""

from typing import Any, Dict

import numpy as np

from src.davidson import FitConfig, fit, simulate_tallies
from src.errors import BenchmarkInputError
from src.pipeline import EngineReport, load_records, pooled_tallies, run_davidson, run_dominance
from src.pipeline.runner import engine_step
from src.utils import RunConfig

from .base_handler import BaseHandler


def parse_worths(values: list) -> Dict[str, float]:
    """Converte ["a=0.5", "b=0.3"] em worths normalizados."""
    worths = {}
    for item in values:
        name, _, number = item.partition("=")
        try:
            worths[name.strip()] = float(number)
        except ValueError as e:
            raise BenchmarkInputError(f"Worth inválido {item!r} (use nome=valor)") from e
    if len(worths) < 2 or any(v <= 0 for v in worths.values()):
        raise BenchmarkInputError("Informe ao menos dois worths positivos")
    total = sum(worths.values())
    return {name: value / total for name, value in worths.items()}


class DavidsonHandler(BaseHandler):
    """Ajuste do modelo de Davidson."""

    def handle_bt(self, config: RunConfig, args: Any) -> bool:
        datasets, _ = load_records(config)
        tallies = pooled_tallies(datasets, config)
        reports = {"dominance": run_dominance(tallies, config)}
        reports["davidson"], table = run_davidson(tallies, config)
        self.logger.info(f"Ranking de Davidson: {table.ranking}")
        return self.emit(reports, config, args.out)

    def handle_simulate(self, config: RunConfig, args: Any) -> bool:
        worths = parse_worths(args.worth)
        if args.nu < 0 or args.instances < 1:
            raise BenchmarkInputError("nu deve ser >= 0 e instances >= 1")
        rng = np.random.default_rng(config.seed)
        tallies = simulate_tallies(worths, args.nu, args.instances, rng)
        table = engine_step("davidson", lambda: fit(tallies, FitConfig(zero_count_handling="haldane")))
        data = {
            "true": {"worths": worths, "nu": args.nu, "instances": args.instances, "seed": config.seed},
            "tallies": [t.to_dict() for t in tallies],
            "fit": table.to_dict(),
        }
        report = EngineReport("davidson", data, partial=not table.converged)
        return self.emit({"davidson": report}, config, args.out)
