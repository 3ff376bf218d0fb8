import itertools
import json
import math

import numpy as np
import pandas as pd
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from src.dominance import MetricRecord
from src.errors import (
    ConstantInput,
    DegenerateRatings,
    DegenerateSpread,
    InsufficientPairs,
    KeyMisalignment,
    MismatchedMetrics,
    OutOfRangeInput,
)
from src.qtext import (
    QTEXT_METRICS,
    THETA_0,
    QTextParams,
    ScoredRecord,
    TuneConfig,
    apply_bounds,
    group_means,
    load_params,
    normalize,
    params_document,
    parameter_bounds,
    record_key,
    score,
    score_gradient,
    score_matrix,
    score_records,
    spearman,
    tune,
)
from src.qtext.tuner import align
from tests.factories import record

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def params(draw):
    low, high = parameter_bounds()
    return QTextParams.from_vector([draw(st.floats(lo, hi)) for lo, hi in zip(low, high)])


def raw_records():
    return [
        record("i1", "a", 0.0, 0.2, 2.0),
        record("i1", "b", 0.5, 0.4, 4.0),
        record("i1", "c", 1.0, 0.6, 6.0),
    ]


def normalized(instance, method, perplexity, coherence, diversity):
    return MetricRecord(
        instance, method, {"perplexity": perplexity, "coherence": coherence, "diversity": diversity}
    )


def mean_rank_spearman(x, y):
    ranks_x = pd.Series(x).rank(method="average")
    ranks_y = pd.Series(y).rank(method="average")
    return float(np.corrcoef(ranks_x, ranks_y)[0, 1])


def test_normalize_inverts_perplexity():
    rows, bounds = normalize(raw_records(), dataset="toy")
    values = {r.method_id: r.values for r in rows}
    assert values["a"] == pytest.approx({"perplexity": 1.0, "coherence": 0.0, "diversity": 0.0})
    assert values["b"] == pytest.approx({"perplexity": 0.5, "coherence": 0.5, "diversity": 0.5})
    assert values["c"] == pytest.approx({"perplexity": 0.0, "coherence": 1.0, "diversity": 1.0})
    assert bounds.metrics["perplexity"].inverted
    assert bounds.to_dict()["dataset"] == "toy"


def test_normalize_rejects_constant_metric():
    rows = [record("i1", "a", 0.1, 0.2, 3.0), record("i1", "b", 0.5, 0.4, 3.0)]
    with pytest.raises(DegenerateSpread):
        normalize(rows)


def test_apply_bounds_clamps_and_counts():
    _, bounds = normalize(raw_records())
    rows, clamped = apply_bounds([record("i9", "a", 1.5, 0.4, 1.0)], bounds)
    assert clamped == 2
    assert rows[0].values == pytest.approx({"perplexity": 1.0, "coherence": 1.0, "diversity": 0.5})


def test_score_examples():
    assert score([1.0, 1.0, 1.0]) == pytest.approx(math.exp(-0.25))
    assert score([0.5, 0.5, 0.5]) == pytest.approx(0.5)
    assert score([0.0, 0.0, 0.0]) == 0.0
    weighted = QTextParams(weights=(5.0, 0.1, 0.1))
    assert score([1.0, 0.0, 0.0], weighted) == pytest.approx(5.0 / 5.2 * math.exp(-0.25))


def test_score_rejects_out_of_range():
    with pytest.raises(OutOfRangeInput):
        score([1.2, 0.5, 0.5])
    with pytest.raises(OutOfRangeInput):
        score([float("nan"), 0.5, 0.5])


def test_params_validation():
    with pytest.raises(OutOfRangeInput):
        QTextParams(weights=(0.0, 1.0, 1.0))
    with pytest.raises(OutOfRangeInput):
        QTextParams(penalties=(1.0, 1.0, 11.0))
    assert QTextParams.from_vector(THETA_0.as_vector()) == THETA_0


@given(st.tuples(unit, unit, unit), params())
def test_score_stays_in_unit_interval(m, theta):
    value = score(m, theta)
    assert 0.0 <= value <= 1.0 + 1e-12


def direct_score(m, theta):
    """Avaliação independente, termo a termo, da fórmula do Q*Text."""
    terms = zip(m, theta.weights, theta.targets, theta.penalties)
    return sum(w * x * math.exp(-a * (x - mu) ** 2) for x, w, mu, a in terms) / sum(theta.weights)


def test_score_matrix_matches_direct_evaluation():
    theta, _ = load_params()
    m = np.random.default_rng(11).uniform(size=(1000, 3))
    expected = [direct_score(row, theta) for row in m]
    assert np.max(np.abs(score_matrix(m, theta) - expected)) < 1e-12


def test_score_with_default_params_at_midpoint():
    theta, _ = load_params()
    value = score([0.5, 0.5, 0.5], theta)
    assert value == pytest.approx(direct_score([0.5, 0.5, 0.5], theta), abs=1e-12)
    assert value == pytest.approx(0.254800, abs=1e-5)


def test_gradient_matches_finite_differences():
    theta, _ = load_params()
    h = 1e-6
    for m in np.random.default_rng(5).uniform(0.05, 0.95, size=(100, 3)):
        numeric = [
            (score(m + h * np.eye(3)[k], theta) - score(m - h * np.eye(3)[k], theta)) / (2 * h)
            for k in range(3)
        ]
        assert score_gradient(m, theta) == pytest.approx(numeric, abs=1e-6)


def test_default_params_file():
    theta, bounds = load_params()
    assert theta.weights == (0.586, 0.834, 3.853)
    assert theta.targets == (0.458, 0.0, 0.854)
    assert theta.penalties == (2.579, 1.496, 7.370)
    assert bounds is None


def test_params_document_carries_bounds(tmp_path):
    _, bounds = normalize(raw_records(), dataset="toy")
    path = tmp_path / "params.json"
    path.write_text(json.dumps(params_document(THETA_0, bounds)), encoding="utf-8")
    theta, loaded = load_params(path)
    assert theta == THETA_0
    assert loaded == bounds


def test_score_records_uses_stored_bounds():
    _, bounds = normalize(raw_records())
    scored, clamped = score_records(raw_records() + [record("i2", "a", 2.0, 0.4, 4.0)], bounds)
    assert clamped == 1
    assert scored[1].score == pytest.approx(0.5)
    assert scored[1].to_dict()["score_100"] == pytest.approx(50.0)


def test_score_records_require_all_three_metrics():
    _, bounds = normalize(raw_records())
    with pytest.raises(MismatchedMetrics):
        score_records([MetricRecord("i1", "a", {"coherence": 0.1})], bounds)


def test_group_means_by_level():
    scores = [
        ScoredRecord("i1", "gpt2|greedy|none", 0.2),
        ScoredRecord("i1", "gpt2|contrastive|alpha=0.6", 0.6),
        ScoredRecord("i1", "opt|greedy|none", 0.4),
        ScoredRecord("i2", "opt|greedy|none", 0.8),
    ]
    assert group_means(scores, "method") == pytest.approx(
        {"gpt2|contrastive|alpha=0.6": 0.6, "gpt2|greedy|none": 0.2, "opt|greedy|none": 0.6}
    )
    assert group_means(scores, "model") == pytest.approx({"gpt2": 0.4, "opt": 0.6})
    assert group_means(scores, "strategy") == pytest.approx({"contrastive": 0.6, "greedy": 1.4 / 3})


def test_group_means_plain_ids():
    scores = [ScoredRecord("i1", "a", 0.2), ScoredRecord("i2", "a", 0.4)]
    assert group_means(scores, "strategy") == pytest.approx({"a": 0.3})


def test_spearman_examples():
    assert spearman([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)
    assert spearman([1, 2, 3, 4], [4, 3, 2, 1]) == pytest.approx(-1.0)
    assert spearman([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8)
    assert spearman([1, 2, 3, 4, 5], [2, 1, 4, 3, 5]) == pytest.approx(0.8)


@pytest.mark.parametrize(
    "x, y",
    [
        ([1, 2, 2, 3], [1, 2, 3, 4]),
        ([1, 1, 2, 2, 3], [5, 3, 3, 1, 2]),
        ([0.5, 0.5, 0.5, 1.0], [1, 2, 3, 3]),
        ([2, 2, 2, 1, 1, 3], [1, 2, 3, 4, 5, 6]),
        ([1, 2, 3, 4, 5], [3, 3, 1, 1, 2]),
    ],
)
def test_spearman_ties_use_mean_ranks(x, y):
    assert spearman(x, y) == pytest.approx(mean_rank_spearman(x, y))


def test_spearman_errors():
    with pytest.raises(KeyMisalignment):
        spearman([1, 2, 3], [1, 2])
    with pytest.raises(InsufficientPairs):
        spearman([1, 2], [2, 1])
    with pytest.raises(ConstantInput):
        spearman([1, 1, 1], [1, 2, 3])


@given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)), min_size=3, max_size=30))
def test_spearman_invariant_under_monotone_maps(pairs):
    x, y = zip(*pairs)
    assume(len(set(x)) > 1 and len(set(y)) > 1)
    assert spearman(np.exp(x), y) == pytest.approx(spearman(x, y), abs=1e-12)
    assert spearman(x, y) == pytest.approx(mean_rank_spearman(x, y), abs=1e-12)


def tuning_records():
    grid = np.linspace(0.1, 0.9, 9)
    return [
        normalized(f"i{k}", "m", p, c, d)
        for k, (p, c, d) in enumerate(zip(grid, grid[::-1], np.roll(grid, 4)))
    ]


def test_tune_recovers_self_generated_ratings():
    records = tuning_records()
    truth = [score([r.values[n] for n in QTEXT_METRICS]) for r in records]
    ratings = {record_key(r): float(s) for r, s in zip(records, truth)}
    result = tune(records, ratings, TuneConfig(max_trials=50))
    assert result.rho == pytest.approx(1.0)
    # só melhoras estritas são aceitas: theta_0 permanece
    assert result.params == THETA_0
    assert result.granularity == "record"


def test_tune_is_deterministic_and_monotone():
    records = tuning_records()
    ratings = {record_key(r): float(k % 4) for k, r in enumerate(records)}
    config = TuneConfig(max_trials=200, rng_seed=7, restarts=2)
    first = tune(records, ratings, config)
    second = tune(records, ratings, config)
    assert first.params == second.params
    assert first.to_dict() == second.to_dict()
    assert len(first.trace) == 2 * 201
    for restart in (0, 1):
        best = [t.best_rho for t in first.trace if t.restart == restart]
        assert best == sorted(best)
    assert first.rho == max(t.best_rho for t in first.trace)


def test_tune_moves_diversity_peak():
    # só a diversidade varia: ratings preferem diversidade baixa
    diversity = np.linspace(0.2, 1.0, 9)
    records = [normalized(f"i{k}", "m", 0.0, 0.0, float(d)) for k, d in enumerate(diversity)]
    ratings = {record_key(r): -float(d) for r, d in zip(records, diversity)}
    objective, _ = align(records, ratings)
    assert objective(THETA_0) == pytest.approx(-1.0)
    result = tune(records, ratings, TuneConfig(max_trials=3000, perturbation_scale=0.5, rng_seed=1))
    assert result.rho > 0.0


def grid_best_rho(objective, points_per_axis=3):
    low, high = parameter_bounds()
    axes = [np.linspace(lo, hi, points_per_axis) for lo, hi in zip(low, high)]
    return max(objective(QTextParams.from_vector(point)) for point in itertools.product(*axes))


def test_tune_reaches_grid_optimum_when_ratings_follow_diversity():
    rng = np.random.default_rng(3)
    perplexity, coherence, diversity = rng.uniform(size=(3, 60))
    records = [
        normalized(f"i{k}", "m", float(p), float(c), float(d))
        for k, (p, c, d) in enumerate(zip(perplexity, coherence, diversity))
    ]
    ratings = {record_key(r): float(d) for r, d in zip(records, diversity)}
    objective, _ = align(records, ratings)
    best = grid_best_rho(objective)
    result = tune(records, ratings, TuneConfig(max_trials=5000, rng_seed=0))
    assert result.rho >= best - 0.01
    weights = result.params.weights
    assert weights[2] > max(weights[0], weights[1])


def test_method_level_ratings_average_records():
    records = [
        normalized("i1", "a", 0.9, 0.9, 0.9), normalized("i2", "a", 0.8, 0.8, 0.8),
        normalized("i1", "b", 0.5, 0.5, 0.5), normalized("i2", "b", 0.4, 0.4, 0.4),
        normalized("i1", "c", 0.1, 0.1, 0.1), normalized("i2", "c", 0.2, 0.2, 0.2),
    ]
    objective, granularity = align(records, {"a": 3.0, "b": 2.0, "c": 1.0})
    assert granularity == "method"
    assert objective(THETA_0) == pytest.approx(1.0)


def test_ratings_alignment_errors():
    records = tuning_records()
    with pytest.raises(DegenerateRatings):
        align(records, {record_key(records[0]): 1.0, record_key(records[1]): 2.0})
    with pytest.raises(DegenerateRatings):
        align(records, {record_key(r): 3.0 for r in records})
    with pytest.raises(KeyMisalignment):
        align(records, {"x::m": 1.0, "y::m": 2.0, "z::m": 3.0})


def test_constant_scores_count_as_worst_correlation():
    records = [normalized(f"i{k}", "m", 0.0, 0.0, 0.0) for k in range(4)]
    objective, _ = align(records, {record_key(r): float(k) for k, r in enumerate(records)})
    assert objective(THETA_0) == -math.inf
