"""
src/pipeline/reports.py

Serialização determinística dos relatórios: JSON com chaves ordenadas e
tabelas de texto alinhadas.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Sequence

import pandas as pd

logger = logging.getLogger(__name__)


def clean(value: Any) -> Any:
    """Converte para tipos JSON; floats não finitos viram None."""
    if isinstance(value, dict):
        return {str(k): clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean(v) for v in value]
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def to_json(data: Any) -> str:
    """JSON determinístico (chaves ordenadas, repr de float do Python)."""
    return json.dumps(clean(data), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]], precision: int = 6) -> str:
    """Tabela de texto alinhada."""
    if not rows:
        return "(vazio)"
    frame = pd.DataFrame(list(rows), columns=list(headers))
    return frame.to_string(index=False, float_format=lambda v: f"{v:.{precision}f}")


def _dominance_text(data: dict) -> List[str]:
    summary = data["summary"]
    lines = [
        format_table(
            ["method_i", "method_j", "wins_i", "wins_j", "ties"],
            [(t["method_i"], t["method_j"], t["wins_i"], t["wins_j"], t["ties"]) for t in data["tallies"]],
        ),
        "",
        f"comparações ordenadas: {summary['ordered_comparisons']}",
        f"comparações não ordenadas: {summary['unordered_comparisons']}",
        f"dominância em >= {summary['share']:.0%} das instâncias: {summary['at_least_share']}",
        f"sem nenhuma dominância: {summary['never_dominates']}",
    ]
    if summary["full_dominance"]:
        lines += ["", "dominância estrita em todas as instâncias:"]
        lines.append(
            format_table(
                ["winner", "loser", "count"],
                [(d["winner"], d["loser"], d["count"]) for d in summary["full_dominance"]],
            )
        )
    return lines


def _davidson_text(data: dict) -> List[str]:
    fit = data["fit"]
    return [
        format_table(["method", "worth"], list(fit["worths"].items())),
        "",
        f"nu: {fit['nu']:.6g}",
        f"log-verossimilhança: {fit['loglik']:.6f}",
        f"iterações: {fit['iterations']}  convergiu: {fit['converged']}",
    ]


def _ufg_text(data: dict) -> List[str]:
    depth = data["depth"]
    return [
        f"métodos: {', '.join(data['methods'])}",
        f"posets observados: {data['observations']}  conjuntos ufg: {depth['ufg_set_count']}",
        "",
        format_table(
            ["poset", "depth", "exact", "multiplicity"],
            [(e["label"], e["depth"], e["depth_exact"], e["multiplicity"]) for e in depth["entries"]],
        ),
        "",
        f"mais central: {depth['most_central']}",
        f"mais atípico: {depth['most_outlying']}",
        *depth["notes"],
    ]


def _qtext_text(data: dict) -> List[str]:
    lines = []
    for level in ("model", "strategy", "method"):
        means = data["means"][level]
        lines += [f"Q*Text médio por {level}:", format_table(
            [level, "score", "score_100"],
            [(k, v, 100.0 * v) for k, v in sorted(means.items(), key=lambda kv: (-kv[1], kv[0]))],
            precision=4,
        ), ""]
    lines.append(f"valores grampeados: {data['clamped']}")
    if data.get("tuning"):
        lines.append(f"rho de Spearman ajustado: {data['tuning']['rho']:.4f}")
    return lines


def _agreement_text(data: dict) -> List[str]:
    rho = data["rho"]
    return [
        format_table(
            ["method", "davidson_rank", "qtext_rank", "discrepancy"],
            [(m["method_id"], m["davidson_rank"], m["qtext_rank"], m["discrepancy"]) for m in data["methods"]],
        ),
        "",
        f"rho de Spearman entre os rankings: {'n/d' if rho is None else f'{rho:.4f}'}",
        f"menores discrepâncias: {', '.join(data['smallest_discrepancies'])}",
    ]


TEXT_RENDERERS = {
    "dominance": _dominance_text,
    "davidson": _davidson_text,
    "ufg": _ufg_text,
    "qtext": _qtext_text,
    "agreement": _agreement_text,
}


def render_text(engine: str, data: dict) -> str:
    """Relatório em texto; motores sem tabela própria caem no JSON."""
    renderer = TEXT_RENDERERS.get(engine)
    if renderer is None:
        return to_json(data)
    return "\n".join(renderer(data)) + "\n"


def write_reports(reports: Dict[str, dict], manifest: dict, out_dir: Path) -> List[Path]:
    """
    Grava `<motor>.json`, `<motor>.txt` e `manifest.json` em `out_dir`.

    Returns:
        Caminhos gravados, em ordem.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for engine in sorted(reports):
        json_path = out_dir / f"{engine}.json"
        json_path.write_text(to_json(reports[engine]), encoding="utf-8")
        text_path = out_dir / f"{engine}.txt"
        text_path.write_text(render_text(engine, reports[engine]), encoding="utf-8")
        written += [json_path, text_path]
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(to_json(manifest), encoding="utf-8")
    written.append(manifest_path)
    logger.info(f"{len(written)} arquivos de relatório gravados em {out_dir}")
    return written
