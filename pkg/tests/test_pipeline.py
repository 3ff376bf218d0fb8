import json
import math
import shutil
from dataclasses import replace
from fractions import Fraction

import pytest

from src.davidson import WorthTable
from src.dominance import tally
from src.errors import (
    ConfigError,
    DuplicateRecord,
    EngineFailure,
    NoSharedMethods,
    NonFiniteValue,
    NoUfgSets,
    ParseError,
)
from src.pipeline import (
    agreement,
    ingest,
    ingest_raw,
    load_datasets,
    pooled_tallies,
    read_posets,
    read_ratings,
    render_text,
    run,
    to_json,
    write_records,
    write_reports,
)
from src.pipeline.runner import engine_step
from src.utils import QTextSection, RunConfig, UfgSection, load_run_config
from tests.factories import METRICS_HEADER, write_csv

CONTRASTIVE = "gpt2|contrastive|alpha=0.6"
GREEDY = "gpt2|greedy|none"
SAMPLING = "opt|sampling|top_p=0.95"


def worth_table(worths):
    ranking = sorted(worths, key=lambda m: (-worths[m], m))
    return WorthTable(worths, 0.0, -math.inf, 0.0, 1, True, ranking)


# --- ingestão ---------------------------------------------------------------------


def test_ingest_joins_method_columns(data_dir):
    records = ingest(data_dir / "small_benchmark.csv")
    assert len(records) == 18
    assert {r.method_id for r in records} == {CONTRASTIVE, GREEDY, SAMPLING}
    assert records[0].values == {"coherence": -1.0, "diversity": 0.4, "perplexity": 2.5}


def test_ingest_reports_line_numbers(tmp_path):
    path = write_csv(tmp_path / "bad.csv", METRICS_HEADER, ["i1,a,-1.0,0.5,3.0", "i1,b,-1.0,x,3.0"])
    with pytest.raises(ParseError) as info:
        ingest(path)
    assert info.value.line == 3


def test_ingest_rejects_missing_columns(tmp_path):
    path = write_csv(tmp_path / "bad.csv", "instance_id,method_id,coherence", ["i1,a,-1.0"])
    with pytest.raises(ParseError) as info:
        ingest(path)
    assert info.value.line == 1


def test_ingest_rejects_non_finite_and_duplicates(tmp_path):
    nan = write_csv(tmp_path / "nan.csv", METRICS_HEADER, ["i1,a,nan,0.5,3.0"])
    with pytest.raises(NonFiniteValue):
        ingest(nan)
    twice = write_csv(tmp_path / "dup.csv", METRICS_HEADER, ["i1,a,-1.0,0.5,3.0", "i1,a,-2.0,0.5,3.0"])
    with pytest.raises(DuplicateRecord):
        ingest(twice)
    with pytest.raises(ParseError):
        ingest(tmp_path / "missing.csv")


def test_ingest_json_lines(tmp_path):
    path = tmp_path / "metrics.jsonl"
    rows = [
        {"instance_id": "i1", "method_id": "a", "coherence": -1.0, "diversity": 0.5, "perplexity": 3.0},
        {"instance_id": "i1", "method_id": "b", "coherence": -2.0, "diversity": 0.5, "perplexity": 3.0},
    ]
    path.write_text("\n".join(json.dumps(row) for row in rows) + "\n", encoding="utf-8")
    records = ingest(path)
    assert [r.method_id for r in records] == ["a", "b"]
    assert records[1].values["coherence"] == -2.0

    rows[1]["diversity"] = "high"
    path.write_text("\n".join(json.dumps(row) for row in rows) + "\n", encoding="utf-8")
    with pytest.raises(ParseError) as info:
        ingest(path)
    assert info.value.line == 2


def test_ingest_raw_generations(data_dir):
    records = {r.method_id: r.values for r in ingest_raw(data_dir / "raw_generations.csv")}
    assert records["greedy"] == pytest.approx(
        {"coherence": -math.log(2), "diversity": 1.0, "perplexity": 2.0}
    )
    assert records["sampling"] == pytest.approx(
        {"coherence": -2.0, "diversity": 1 / 24, "perplexity": math.exp(2)}
    )


def test_merged_datasets_prefix_instances(tmp_path, data_dir):
    first = shutil.copy(data_dir / "small_benchmark.csv", tmp_path / "wiki.csv")
    second = shutil.copy(data_dir / "small_benchmark.csv", tmp_path / "news.csv")
    datasets = load_datasets([first, second])
    assert list(datasets) == ["wiki", "news"]
    assert datasets["news"][0].instance_id == "news:i1"
    single = load_datasets([first])
    assert single["wiki"][0].instance_id == "i1"


def test_written_records_read_back(tmp_path, data_dir):
    records = ingest(data_dir / "small_benchmark.csv")
    path = write_records(records, tmp_path / "out.csv", ["coherence", "diversity", "perplexity"])
    assert ingest(path) == records


def test_read_posets_and_ratings(data_dir, worked_observed):
    observed = read_posets(data_dir / "worked_posets.json")
    assert observed.distinct == worked_observed.distinct
    assert observed.total == 4
    ratings = read_ratings(data_dir / "method_ratings.csv")
    assert ratings == {GREEDY: 2.9, CONTRASTIVE: 4.1, SAMPLING: 3.3}


def test_read_ratings_rejects_repeated_keys(tmp_path):
    path = write_csv(tmp_path / "ratings.csv", "key,rating", ["a,1", "a,2"])
    with pytest.raises(DuplicateRecord):
        read_ratings(path)


# --- concordância ------------------------------------------------------------------------


def test_agreement_ranks_and_discrepancy():
    report = agreement(worth_table({"a": 0.5, "b": 0.3, "c": 0.2}), {"a": 0.1, "b": 0.3, "c": 0.2, "d": 0.9})
    assert report.methods == ["a", "b", "c"]
    assert report.qtext_order == ["b", "c", "a"]
    assert report.discrepancy == {"a": -2, "b": 1, "c": 1}
    assert report.rho == pytest.approx(-0.5)
    assert report.top_k[1] == {"davidson": ["a"], "qtext": ["b"], "shared": []}
    assert report.smallest_discrepancies(2) == ["b", "c"]
    assert report.to_dict()["smallest_discrepancies"] == ["b", "c", "a"]


def test_agreement_edge_cases():
    assert agreement(worth_table({"a": 0.6, "b": 0.4}), {"a": 0.2, "b": 0.1}).rho is None
    with pytest.raises(NoSharedMethods):
        agreement(worth_table({"a": 0.6, "b": 0.4}), {"x": 0.2})


# --- execução completa ---------------------------------------------------------------------


def test_run_davidson_on_small_benchmark(data_dir):
    config = RunConfig(inputs=[str(data_dir / "small_benchmark.csv")], engines=["davidson"])
    result = run(config)
    assert sorted(result.reports) == ["davidson", "dominance"]
    tallies = {
        (t["method_i"], t["method_j"]): (t["wins_i"], t["wins_j"], t["ties"])
        for t in result.reports["dominance"].data["tallies"]
    }
    assert tallies == {
        (CONTRASTIVE, GREEDY): (2, 1, 3),
        (CONTRASTIVE, SAMPLING): (1, 1, 4),
        (GREEDY, SAMPLING): (1, 0, 5),
    }
    fit = result.reports["davidson"].data["fit"]
    assert fit["converged"]
    assert sum(fit["worths"].values()) == pytest.approx(1.0)
    assert not result.partial


def test_tallies_pooled_over_input_files(tmp_path, data_dir):
    first = shutil.copy(data_dir / "small_benchmark.csv", tmp_path / "wiki.csv")
    second = shutil.copy(data_dir / "small_benchmark.csv", tmp_path / "news.csv")
    config = RunConfig(inputs=[str(first), str(second)], engines=["davidson"])
    datasets = load_datasets(config.inputs)
    pooled = pooled_tallies(datasets, config)
    assert pooled == tally([r for records in datasets.values() for r in records])
    assert {(t.method_i, t.method_j): (t.wins_i, t.wins_j, t.ties) for t in pooled} == {
        (CONTRASTIVE, GREEDY): (4, 2, 6),
        (CONTRASTIVE, SAMPLING): (2, 2, 8),
        (GREEDY, SAMPLING): (2, 0, 10),
    }
    assert run(config).reports["dominance"].data["tallies"] == [t.to_dict() for t in pooled]


def test_run_ufg_from_posets_file(data_dir):
    config = RunConfig(
        engines=["ufg"], ufg=UfgSection(posets_path=str(data_dir / "worked_posets.json"))
    )
    result = run(config)
    depth = result.reports["ufg"].data["depth"]
    assert depth["mode"] == "weighted"
    assert depth["ufg_set_count"] == 8
    assert sorted(Fraction(e["depth_exact"]) for e in depth["entries"]) == [
        Fraction(1, 2), Fraction(1, 2), Fraction(9, 13), Fraction(9, 13)
    ]
    assert not result.partial

    uniform = run(replace(config, ufg=replace(config.ufg, mode="uniform_count")))
    assert sorted(Fraction(e["depth_exact"]) for e in uniform.reports["ufg"].data["depth"]["entries"]) == [
        Fraction(1, 2), Fraction(1, 2), Fraction(3, 4), Fraction(3, 4)
    ]

    truncated = run(replace(config, ufg=replace(config.ufg, max_size=2)))
    assert truncated.partial


def test_empty_ufg_section_uses_weighted_depth(tmp_path, data_dir):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"engines": ["ufg"], "ufg": {}}), encoding="utf-8")
    config = load_run_config(str(path))
    assert config.ufg.mode == "weighted"
    config = replace(config, ufg=replace(config.ufg, posets_path=str(data_dir / "worked_posets.json")))
    assert run(config).reports["ufg"].data["depth"]["mode"] == "weighted"


def test_run_ufg_from_records_respects_method_limit(data_dir):
    config = RunConfig(inputs=[str(data_dir / "small_benchmark.csv")], engines=["ufg"])
    observed = run(config).reports["ufg"].data
    assert observed["observations"] == 6
    with pytest.raises(ConfigError):
        run(replace(config, ufg=UfgSection(method_limit=2)))


def test_ufg_failure_is_tagged(tmp_path, data_dir):
    posets = json.loads((data_dir / "worked_posets.json").read_text(encoding="utf-8"))
    same = {"posets": [posets["posets"][0]] * 3}
    path = tmp_path / "same.json"
    path.write_text(json.dumps(same), encoding="utf-8")
    with pytest.raises(EngineFailure) as info:
        run(RunConfig(engines=["ufg"], ufg=UfgSection(posets_path=str(path))))
    assert info.value.engine == "ufg"
    assert isinstance(info.value.cause, NoUfgSets)


def test_engine_step_tags_engine_errors():
    def failing():
        raise NoUfgSets("vazio")

    with pytest.raises(EngineFailure) as info:
        engine_step("ufg", failing)
    assert str(info.value) == "[ufg] vazio"


def test_run_qtext_and_agreement(data_dir):
    config = RunConfig(inputs=[str(data_dir / "small_benchmark.csv")], engines=["davidson", "qtext"])
    result = run(config)
    qtext = result.reports["qtext"].data
    assert qtext["provenance"] == {"source": "file", "params": "default_params.json"}
    assert set(qtext["means"]["method"]) == {CONTRASTIVE, GREEDY, SAMPLING}
    assert set(qtext["means"]["model"]) == {"gpt2", "opt"}
    assert all(0.0 <= s["score"] <= 1.0 for s in qtext["scores"])
    assert qtext["clamped"] == 0
    assert result.reports["agreement"].data["rho"] is not None


def test_qtext_independent_of_other_engines(data_dir):
    inputs = [str(data_dir / "small_benchmark.csv")]
    alone = run(RunConfig(inputs=inputs, engines=["qtext"]))
    together = run(RunConfig(inputs=inputs))
    assert to_json(alone.reports["qtext"].data) == to_json(together.reports["qtext"].data)
    assert "agreement" not in alone.reports


def test_run_qtext_tuned_against_method_ratings(data_dir):
    config = RunConfig(
        inputs=[str(data_dir / "small_benchmark.csv")],
        engines=["qtext"],
        seed=3,
        qtext=QTextSection(
            params_source="tune", ratings_path=str(data_dir / "method_ratings.csv"), max_trials=50
        ),
    )
    tuning = run(config).reports["qtext"].data["tuning"]
    assert tuning["granularity"] == "method"
    assert len(tuning["trace"]) == 51
    assert tuning["rho"] == max(t["best_rho"] for t in tuning["trace"] if t["best_rho"] is not None)


def test_per_dataset_normalization(tmp_path, data_dir):
    first = shutil.copy(data_dir / "small_benchmark.csv", tmp_path / "wiki.csv")
    second = shutil.copy(data_dir / "small_benchmark.csv", tmp_path / "news.csv")
    config = RunConfig(inputs=[str(first), str(second)], engines=["qtext"])
    merged = run(config).reports["qtext"].data
    split = run(replace(config, qtext=QTextSection(per_dataset_normalization=True))).reports["qtext"].data
    assert list(merged["bounds"]) == ["wiki+news"]
    assert sorted(split["bounds"]) == ["news", "wiki"]
    # conjuntos idênticos: mesmos limites, mesmos scores
    for level, means in merged["means"].items():
        assert split["means"][level] == pytest.approx(means)


def test_reports_are_byte_identical_across_runs(tmp_path, data_dir):
    config = RunConfig(inputs=[str(data_dir / "small_benchmark.csv")], seed=11)
    for name in ("first", "second"):
        result = run(config)
        write_reports(result.as_documents(), result.manifest, tmp_path / name)
    first = sorted((tmp_path / "first").iterdir())
    assert [p.name for p in first] == [
        "agreement.json", "agreement.txt", "davidson.json", "davidson.txt",
        "dominance.json", "dominance.txt", "manifest.json", "qtext.json", "qtext.txt",
        "ufg.json", "ufg.txt",
    ]
    for path in first:
        assert path.read_bytes() == (tmp_path / "second" / path.name).read_bytes()


def test_manifest_lists_input_digests(data_dir):
    result = run(RunConfig(inputs=[str(data_dir / "small_benchmark.csv")], engines=["davidson"]))
    manifest = result.manifest
    assert manifest["inputs"][0]["path"] == "small_benchmark.csv"
    assert len(manifest["inputs"][0]["sha256"]) == 64
    assert manifest["engines"] == ["davidson"]
    assert "numpy" in manifest["versions"]


def test_text_rendering(data_dir):
    result = run(RunConfig(inputs=[str(data_dir / "small_benchmark.csv")], engines=["davidson"]))
    text = render_text("davidson", result.reports["davidson"].data)
    assert CONTRASTIVE in text
    assert "convergiu: True" in text
