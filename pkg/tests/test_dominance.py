import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.dominance import (
    ComparisonTally,
    Direction,
    DominanceConfig,
    DominanceOutcome,
    MetricDirection,
    compare,
    dominance_summary,
    instance_poset,
    instance_posets,
    merge_tallies,
    tally,
)
from src.errors import (
    BenchmarkInputError,
    ConfigError,
    DuplicateRecord,
    ElementMismatch,
    MismatchedInstance,
    MismatchedMetrics,
)
from src.poset import Poset
from tests.factories import record

CONFIG = DominanceConfig()
metric_values = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False).map(lambda v: round(v, 1))


@st.composite
def instances(draw, max_methods=6):
    m = draw(st.integers(min_value=2, max_value=max_methods))
    methods = [f"m{k}" for k in range(m)]
    return [
        record("x", method, draw(metric_values), draw(metric_values), draw(metric_values))
        for method in methods
    ]


def oracle_outcome(a, b, directions):
    """Dominância por definição: sinais das diferenças orientadas."""
    signs = []
    for d in directions:
        diff = a.values[d.name] - b.values[d.name]
        if d.direction is Direction.LOWER_IS_BETTER:
            diff = -diff
        signs.append((diff > 0) - (diff < 0))
    if all(s >= 0 for s in signs) and any(s > 0 for s in signs):
        return DominanceOutcome.I_WINS
    if all(s <= 0 for s in signs) and any(s < 0 for s in signs):
        return DominanceOutcome.J_WINS
    if all(s == 0 for s in signs):
        return DominanceOutcome.INDIFFERENT
    return DominanceOutcome.INCOMPARABLE


def oracle_edges(records):
    """Comparação par a par seguida de fecho transitivo ingênuo."""
    edges = set()
    for a, b in itertools.permutations(records, 2):
        if oracle_outcome(a, b, CONFIG.directions) is DominanceOutcome.I_WINS:
            edges.add((a.method_id, b.method_id))
    changed = True
    while changed:
        changed = False
        for (x, y), (z, w) in itertools.product(list(edges), repeat=2):
            if y == z and (x, w) not in edges:
                edges.add((x, w))
                changed = True
    return edges


def test_better_coherence_and_neutral_rest_wins():
    a = record("x", "a", -1.0, 0.5, 3.0)
    b = record("x", "b", -2.0, 0.5, 3.0)
    assert compare(a, b) is DominanceOutcome.I_WINS
    assert compare(b, a) is DominanceOutcome.J_WINS


def test_identical_values_are_indifferent():
    a = record("x", "a", -1.0, 0.5, 3.0)
    assert compare(a, record("x", "b", -1.0, 0.5, 3.0)) is DominanceOutcome.INDIFFERENT


def test_conflicting_metrics_are_incomparable():
    a = record("x", "a", -1.0, 0.4, 3.0)
    b = record("x", "b", -2.0, 0.6, 3.0)
    assert compare(a, b) is DominanceOutcome.INCOMPARABLE


def test_lower_perplexity_is_better():
    a = record("x", "a", -1.0, 0.5, 2.0)
    b = record("x", "b", -1.0, 0.5, 3.0)
    assert compare(a, b) is DominanceOutcome.I_WINS


def test_equality_tolerance():
    config = DominanceConfig(eq_tolerance=0.05)
    a = record("x", "a", -1.0, 0.50, 3.0)
    b = record("x", "b", -1.0, 0.52, 3.0)
    assert compare(a, b, config) is DominanceOutcome.INDIFFERENT


def test_compare_errors():
    a = record("x", "a", -1.0, 0.5, 3.0)
    with pytest.raises(MismatchedInstance):
        compare(a, record("y", "b", -1.0, 0.5, 3.0))
    with pytest.raises(MismatchedMetrics):
        compare(a, type(a)("x", "b", {"coherence": -1.0}))


def test_config_from_mapping_and_validation():
    config = DominanceConfig.from_mapping({"bleu": "higher_is_better", "ppl": "lower_is_better"})
    assert config.metric_names == ("bleu", "ppl")
    with pytest.raises(ConfigError):
        DominanceConfig.from_mapping({"bleu": "sideways"})
    with pytest.raises(ConfigError):
        DominanceConfig((MetricDirection("a"), MetricDirection("a")))


def test_instance_poset_examples():
    two = instance_poset([record("x", "a", -1.0, 0.5, 3.0), record("x", "b", -2.0, 0.5, 3.0)])
    assert two.strict_pairs() == [("a", "b")]

    chain = instance_poset([
        record("x", "a", -1.0, 0.9, 2.0),
        record("x", "b", -2.0, 0.8, 3.0),
        record("x", "c", -3.0, 0.7, 4.0),
    ])
    assert set(chain.strict_pairs()) == {("a", "b"), ("b", "c"), ("a", "c")}


def test_instance_poset_rejects_foreign_method_list():
    rows = [record("x", "a", -1.0, 0.5, 3.0), record("x", "b", -2.0, 0.5, 3.0)]
    with pytest.raises(ElementMismatch):
        instance_poset(rows, methods=["a", "z"])
    with pytest.raises(ElementMismatch):
        instance_poset(rows, methods=["a"])


def test_all_incomparable_gives_empty_order():
    rows = [record("x", f"m{k}", -float(k), 0.1 * k, 3.0) for k in range(4)]
    assert instance_poset(rows) == Poset.empty(("m0", "m1", "m2", "m3"))


def test_tally_examples():
    rows = []
    for k in range(3):
        rows += [record(k, "a", -1.0, 0.5, 3.0), record(k, "b", -2.0, 0.5, 3.0)]
    assert tally(rows)[0].to_dict() == {
        "method_i": "a", "method_j": "b", "wins_i": 3, "wins_j": 0, "ties": 0, "indifferent": 0,
    }

    rows = [
        record(1, "a", -1.0, 0.5, 3.0), record(1, "b", -2.0, 0.5, 3.0),
        record(2, "a", -2.0, 0.5, 3.0), record(2, "b", -1.0, 0.5, 3.0),
        record(3, "a", -1.0, 0.4, 3.0), record(3, "b", -2.0, 0.6, 3.0),
        record(4, "a", -1.0, 0.4, 3.0), record(4, "b", -2.0, 0.6, 3.0),
    ]
    entry = tally(rows)[0]
    assert (entry.wins_i, entry.wins_j, entry.ties) == (1, 1, 2)


def test_tally_rejects_duplicates():
    rows = [record(1, "a", -1.0, 0.5, 3.0), record(1, "a", -2.0, 0.5, 3.0)]
    with pytest.raises(DuplicateRecord):
        tally(rows)


def test_tally_counts_only_co_observed_instances():
    rows = [
        record(1, "a", -1.0, 0.5, 3.0), record(1, "b", -2.0, 0.5, 3.0),
        record(2, "a", -1.0, 0.5, 3.0), record(2, "c", -2.0, 0.5, 3.0),
    ]
    by_pair = {(t.method_i, t.method_j): t for t in tally(rows)}
    assert by_pair[("a", "b")].total == 1
    assert by_pair[("a", "c")].total == 1
    assert by_pair[("b", "c")].total == 0


def test_summary_lists_full_dominance():
    tallies = [
        ComparisonTally("a", "b", wins_i=10, wins_j=0, ties=0),
        ComparisonTally("a", "c", wins_i=9, wins_j=0, ties=1),
        ComparisonTally("b", "c", wins_i=3, wins_j=3, ties=4),
    ]
    summary = dominance_summary(tallies, share=0.9)
    assert summary.full_dominance == [("a", "b", 10)]
    assert summary.ordered_comparisons == 6
    assert summary.unordered_comparisons == 3
    assert summary.at_least_share == 2
    assert summary.never_dominates == 2


def test_instance_posets_skip_incomplete_instances():
    rows = [
        record(1, "a", -1.0, 0.5, 3.0), record(1, "b", -2.0, 0.5, 3.0),
        record(2, "a", -1.0, 0.5, 3.0),
    ]
    observed = instance_posets(rows, CONFIG, ["a", "b"])
    assert observed.total == 1


def test_merge_is_associative():
    x = ComparisonTally("a", "b", 1, 2, 3, 1)
    y = ComparisonTally("a", "b", 4, 5, 6, 2)
    z = ComparisonTally("a", "b", 7, 8, 9, 3)
    assert x.merge(y).merge(z) == x.merge(y.merge(z))
    with pytest.raises(BenchmarkInputError):
        x.merge(ComparisonTally("a", "c", 1, 0, 0))


def test_merged_parts_equal_tally_of_the_union():
    first = [
        record(1, "a", -1.0, 0.5, 3.0), record(1, "b", -2.0, 0.5, 3.0),
        record(2, "a", -1.0, 0.4, 3.0), record(2, "b", -2.0, 0.6, 3.0),
    ]
    second = [
        record(3, "a", -2.0, 0.5, 3.0), record(3, "b", -1.0, 0.5, 3.0), record(3, "c", -1.0, 0.5, 3.0),
        record(4, "c", -1.0, 0.5, 2.0),
    ]
    merged = merge_tallies([tally(first), tally(second)], {"a", "b", "c"})
    assert [t.to_dict() for t in merged] == [t.to_dict() for t in tally(first + second)]
    by_pair = {(t.method_i, t.method_j): t for t in merged}
    assert (by_pair[("a", "b")].wins_i, by_pair[("a", "b")].wins_j, by_pair[("a", "b")].ties) == (1, 1, 1)
    assert by_pair[("b", "c")].indifferent == 1
    # sem a lista de métodos, só os pares presentes em alguma parte
    assert [(t.method_i, t.method_j) for t in merge_tallies([tally(first)])] == [("a", "b")]


@settings(max_examples=1000)
@given(instances())
def test_instance_poset_matches_oracle(rows):
    poset = instance_poset(rows)
    assert set(poset.strict_pairs()) == oracle_edges(rows)


@settings(max_examples=1000)
@given(instances())
def test_tally_matches_direct_count(rows):
    for entry in tally(rows):
        a = next(r for r in rows if r.method_id == entry.method_i)
        b = next(r for r in rows if r.method_id == entry.method_j)
        outcome = oracle_outcome(a, b, CONFIG.directions)
        assert entry.wins_i == (outcome is DominanceOutcome.I_WINS)
        assert entry.wins_j == (outcome is DominanceOutcome.J_WINS)
        assert entry.total == 1


@settings(max_examples=100)
@given(instances(max_methods=2), st.floats(min_value=0.1, max_value=10.0), st.floats(min_value=-5.0, max_value=5.0))
def test_outcomes_invariant_under_monotone_rescaling(rows, scale, shift):
    a, b = rows[0], rows[1]
    rescaled = [
        type(r)(r.instance_id, r.method_id, {k: v ** 3 * scale + shift for k, v in r.values.items()})
        for r in (a, b)
    ]
    assert compare(*rescaled) is compare(a, b)


@given(instances(max_methods=2))
def test_compare_is_antisymmetric(rows):
    a, b = rows[0], rows[1]
    flipped = {
        DominanceOutcome.I_WINS: DominanceOutcome.J_WINS,
        DominanceOutcome.J_WINS: DominanceOutcome.I_WINS,
    }
    forward = compare(a, b)
    assert compare(b, a) is flipped.get(forward, forward)
