import random

import numpy as np
import pytest

from isec.core import Taxonomy
from isec.cost_model import CostConfig
from isec.edit_engine import align
from isec.perturb import (
    INDETERMINATE,
    MISASSIGNED,
    RECOVERED,
    TypoModel,
    adjacency_from_config,
    classify_back,
    correlate,
    perturb,
    run_simulation,
    validate_ranking,
)

import fixtures_data

DELETE_ONLY = TypoModel(p_adjacent_sub=0, p_random_sub=0, p_delete=1, p_insert=0, p_transpose=0)
TRANSPOSE_ONLY = TypoModel(p_adjacent_sub=0, p_random_sub=0, p_delete=0, p_insert=0, p_transpose=1)


def _find_seed(label: str, model: TypoModel, want: str, limit: int = 500) -> int:
    for seed in range(limit):
        perturbed, _ = perturb(label, model, np.random.default_rng(seed))
        if perturbed == want:
            return seed
    raise AssertionError(f"no seed under {limit} produced {want!r} from {label!r}")


def test_deletion_can_strip_leading_char():
    seed = _find_seed("cba", DELETE_ONLY, "ba")
    perturbed, events = perturb("cba", DELETE_ONLY, np.random.default_rng(seed))
    assert perturbed == "ba"
    assert events[0].kind == "delete"
    assert events[0].position == 0


def test_transposition_reproduces_code_typo():
    seed = _find_seed("AAGX110216", TRANSPOSE_ONLY, "AGAX110216")
    perturbed, events = perturb("AAGX110216", TRANSPOSE_ONLY, np.random.default_rng(seed))
    assert perturbed == "AGAX110216"
    assert events[0].kind == "transpose"
    assert events[0].position == 1


def test_zero_events_is_identity():
    model = TypoModel(events_per_label=0)
    perturbed, events = perturb("anything", model, np.random.default_rng(0))
    assert perturbed == "anything"
    assert events == []


def test_event_audit_trail_applies():
    model = TypoModel(events_per_label=3)
    rng = np.random.default_rng(12)
    for _ in range(50):
        perturbed, events = perturb("santa fe", model, rng)
        assert len(events) == 3


def test_model_validation():
    with pytest.raises(ValueError):
        TypoModel(p_adjacent_sub=0.9)  # probabilities no longer sum to 1
    with pytest.raises(ValueError):
        TypoModel(adjacency={"a": "b"})  # asymmetric map
    TypoModel(adjacency={"a": "b", "b": "a"})


def test_adjacency_from_config():
    cfg = CostConfig(sub_overrides={("g", "t"): 0.35, ("g", "h"): 0.35})
    adjacency = adjacency_from_config(cfg)
    assert adjacency["g"] == "ht"
    assert adjacency["t"] == "g"
    TypoModel(adjacency=adjacency)  # symmetric by construction


def test_classify_recovers_noop(default_cfg):
    tax = Taxonomy.from_labels(["caba", "cba"])
    result = classify_back("caba", "caba", tax, default_cfg)
    assert result.outcome == RECOVERED
    assert result.distance == 0.0


def test_truncated_abbreviation_never_recovered(default_cfg):
    labels = fixtures_data.abbreviation_labels()
    tax = Taxonomy.from_labels(labels)
    # exhaustive distance table over the abbreviation set
    table = {label: (0.0 if label == "ba" else align("ba", label, default_cfg).total_cost) for label in labels}
    assert table["ba"] == 0.0
    assert min(v for k, v in table.items() if k != "ba") >= 1.0
    result = classify_back("ba", "cba", tax, default_cfg)
    assert result.outcome in (MISASSIGNED, INDETERMINATE)
    assert result.outcome == MISASSIGNED
    assert result.best == "ba"
    assert result.distance == 0.0


def test_equidistant_is_indeterminate(default_cfg):
    tax = Taxonomy.from_labels(["ab", "cb"])
    result = classify_back("bb", "ab", tax, default_cfg, delta=0.0)
    assert result.outcome == INDETERMINATE
    assert set(result.candidates) == {"ab", "cb"}


def test_simulation_reproducible(case1_tax, case1_cfg):
    first = run_simulation(case1_tax, case1_cfg, TypoModel(), trials=1500, seed=42)
    second = run_simulation(case1_tax, case1_cfg, TypoModel(), trials=1500, seed=42)
    assert first.to_dict() == second.to_dict()
    third = run_simulation(case1_tax, case1_cfg, TypoModel(), trials=1500, seed=43)
    assert third.to_dict() != first.to_dict()


def test_outcomes_partition_trials(case1_tax, case1_cfg):
    stats = run_simulation(case1_tax, case1_cfg, TypoModel(), trials=2000, seed=7)
    assert sum(stats.source_trials.values()) == 2000
    for label, outcomes in stats.per_source.items():
        assert sum(outcomes.values()) == stats.source_trials[label]


def test_delta_sweep_monotone_indeterminate(case1_tax, case1_cfg):
    counts = []
    for delta in (0.0, 0.5, 1.0):
        stats = run_simulation(case1_tax, case1_cfg, TypoModel(), trials=1200, delta=delta, seed=5)
        counts.append(sum(o[INDETERMINATE] for o in stats.per_source.values()))
    assert counts == sorted(counts)


def test_compression_direction_bound(default_cfg):
    rng = random.Random(3)
    model = TypoModel()
    bound_slack = default_cfg.max_cost()
    for _ in range(8):
        a = "".join(rng.choice("abcdefgh") for _ in range(rng.randint(4, 10)))
        b = "".join(rng.choice("abcdefgh") for _ in range(rng.randint(4, 10)))
        if a == b:
            continue
        base = align(a, b, default_cfg).total_cost
        gen = np.random.default_rng(11)
        dists = []
        for _ in range(200):
            perturbed, _ = perturb(a, model, gen)
            dists.append(0.0 if perturbed == b else align(perturbed, b, default_cfg).total_cost)
        assert np.mean(dists) <= base + bound_slack + 1e-9


def test_distant_labels_degenerate_correlation(default_cfg):
    rng = random.Random(9)
    labels = sorted(
        {"".join(rng.choice("abcdefghijklmnopqrstuvwxyz") for _ in range(20)) for _ in range(6)}
    )
    tax = Taxonomy.from_labels(labels)
    stats, report = validate_ranking(tax, default_cfg, TypoModel(), trials=100 * len(labels), seed=1)
    assert report.degenerate
    assert all(outcomes[MISASSIGNED] == 0 for outcomes in stats.per_source.values())


def test_abbreviation_confusion_correlates(case1_cfg):
    labels = fixtures_data.abbreviation_labels() + ["mendoza", "salta", "formosa"]
    tax = Taxonomy.from_labels(sorted(labels))
    stats, report = validate_ranking(tax, case1_cfg, TypoModel(), trials=10_000, seed=21)
    assert not report.degenerate
    assert report.rho > 0
    assert report.ci_low > 0


def test_validate_ranking_requires_trial_mass(case1_tax, case1_cfg):
    with pytest.raises(ValueError):
        validate_ranking(case1_tax, case1_cfg, TypoModel(), trials=10)


def test_correlate_rates_use_exposure(case1_tax, case1_cfg):
    stats = run_simulation(case1_tax, case1_cfg, TypoModel(), trials=3000, seed=3)
    from isec.core import brute_force_ranking

    scores = brute_force_ranking(case1_tax, case1_cfg, keep_paths=False).scores
    report = correlate(stats, scores, seed=3)
    assert report.n_pairs == len(scores)
    for pair in report.pairs:
        assert 0.0 <= pair["confusion_rate"] <= 1.0
