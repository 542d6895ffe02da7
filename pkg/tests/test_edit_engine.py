import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isec.cost_model import CostConfig
from isec.edit_engine import (
    DELETION,
    INSERTION,
    SUBSTITUTION,
    TRANSPOSITION,
    DegeneratePathError,
    PathSummary,
    align,
    align_stats,
    cmp_score,
    replay,
)

from oracles import osa_distance

labels = st.text(alphabet="abcdef", max_size=12)
small_costs = st.floats(min_value=0.05, max_value=3.0, allow_nan=False)


def test_single_insertion_abbreviation_pair(default_cfg):
    path = align("cba", "caba", default_cfg)
    assert path.total_cost == 1.0
    assert path.n_ops == 1
    assert path.cm == 1.0
    assert path.cp == 1.0
    assert path.ops[0].kind == INSERTION
    assert path.ops[0].chars == ("a",)


def test_single_transposition_code_pair(default_cfg):
    path = align("AAGX110216", "AGAX110216", default_cfg)
    assert path.total_cost == 1.0
    assert path.n_ops == 1
    assert path.cm == 1.0
    assert path.cp == 0.0
    assert path.ops[0].kind == TRANSPOSITION
    assert path.ops[0].chars == ("A", "G")


def test_kitten_sitting_matches_reference(default_cfg):
    assert osa_distance("kitten", "sitting") == 3
    path = align("kitten", "sitting", default_cfg)
    assert path.total_cost == 3.0
    assert path.n_ops == 3
    assert path.cm == 1.0
    assert path.cp == 3.0


def test_identity_pair_rejected(default_cfg):
    with pytest.raises(ValueError):
        align("same", "same", default_cfg)
    with pytest.raises(ValueError):
        align("", "", default_cfg)


def test_empty_vs_nonempty_is_pure_insertion(default_cfg):
    path = align("", "abc", default_cfg)
    assert path.total_cost == 3.0
    assert all(op.kind == INSERTION for op in path.ops)


def test_cmp_examples():
    k0 = PathSummary.from_ops(align("cba", "caba", CostConfig()).ops)
    assert cmp_score(k0, 0.0) == 1.0
    trans_path = align("ab", "ba", CostConfig())
    assert trans_path.cp == 0.0
    assert cmp_score(trans_path, 5.0) == 1.0  # pure transposition is k-invariant
    kitten = align("kitten", "sitting", CostConfig())
    assert cmp_score(kitten, 1.0) == 4.0


def test_cmp_degenerate_path_rejected():
    empty = PathSummary.from_ops(())
    with pytest.raises(DegeneratePathError):
        cmp_score(empty, 1.0)


def test_cmp_negative_k_rejected(default_cfg):
    with pytest.raises(ValueError):
        cmp_score(align("a", "b", default_cfg), -1.0)


@settings(max_examples=300, deadline=None)
@given(a=labels, b=labels)
def test_classical_reduction_property(a, b, default_cfg):
    if a == b:
        return
    assert align(a, b, default_cfg).total_cost == osa_distance(a, b)


@settings(max_examples=200, deadline=None)
@given(a=labels, b=labels)
def test_witness_replay_and_cost_sum(a, b, default_cfg):
    if a == b:
        return
    path = align(a, b, default_cfg)
    assert replay(a, path.ops) == b
    assert sum(op.cost for op in path.ops) == pytest.approx(path.total_cost, abs=1e-12)
    assert path.n_ops == sum(path.counts.values())


def test_witness_replay_weighted_costs():
    cfg = CostConfig(
        sub_overrides={("a", "b"): 0.3},
        ins_overrides={"c": 0.2},
        del_overrides={"d": 0.1},
        trans_overrides={("e", "f"): 0.25},
    )
    for a, b in [("abcdef", "bacfed"), ("fed", "defc"), ("aaadd", "bb")]:
        path = align(a, b, cfg)
        assert replay(a, path.ops) == b


def test_cp_linearity(default_cfg):
    base = align("abc", "xbc", default_cfg)  # one substitution
    extended = align("abc", "xbcd", default_cfg)  # plus one insertion
    assert extended.cp == pytest.approx(base.cp + 1.0)
    trans = align("abc", "bac", default_cfg)  # one transposition
    assert trans.cp == 0.0
    mixed = align("abcd", "bacd", default_cfg)
    assert mixed.cp == 0.0  # still transposition-only


@settings(max_examples=100, deadline=None)
@given(a=labels, b=labels, cost=st.floats(min_value=0.0, max_value=0.99, allow_nan=False))
def test_lower_cost_override_never_increases_total(a, b, cost, default_cfg):
    if a == b:
        return
    base = align(a, b, default_cfg).total_cost
    cheaper = CostConfig(sub_overrides={("a", "b"): cost})
    assert align(a, b, cheaper).total_cost <= base


@settings(max_examples=150, deadline=None)
@given(a=labels, b=labels)
def test_cost_symmetry_under_symmetric_config(a, b):
    if a == b:
        return
    cfg = CostConfig(
        sub_overrides={("a", "b"): 0.4, ("c", "d"): 0.6},
        ins_overrides={"e": 0.5},
        del_overrides={"e": 0.5},
        trans_overrides={("a", "c"): 0.3},
        symmetric_subs=True,
    )
    assert align(a, b, cfg).total_cost == pytest.approx(align(b, a, cfg).total_cost, abs=1e-12)


def test_tie_break_prefers_fewer_operations():
    # two substitutions at 1.0 tie with two deletions plus two insertions at
    # 0.5 each; equal-cost scripts resolve to the minimal operation count
    cfg = CostConfig(
        ins_overrides={"x": 0.5, "y": 0.5},
        del_overrides={"a": 0.5, "b": 0.5},
    )
    path = align("ab", "xy", cfg)
    assert path.total_cost == 2.0
    assert path.n_ops == 2
    assert path.counts[SUBSTITUTION] == 2


def test_deterministic_witness(default_cfg):
    first = align("abcdef", "badcfe", default_cfg)
    second = align("abcdef", "badcfe", default_cfg)
    assert first == second


def test_align_stats_matches_align(default_cfg):
    cfg = CostConfig(sub_overrides={("a", "b"): 0.3}, trans_overrides={("c", "d"): 0.2})
    for a, b in [("abcd", "badc"), ("kitten", "sitting"), ("", "ab"), ("abc", "")]:
        if a == b:
            continue
        path = align(a, b, cfg)
        total, n_ops, cp, counts = align_stats(a, b, cfg)
        assert total == path.total_cost
        assert n_ops == path.n_ops
        assert cp == path.cp
        assert counts == path.counts


def test_osa_restriction_no_reedit_of_transposed_pair(default_cfg):
    # classic restricted-Damerau case: "ca" -> "abc" costs 3 under OSA
    assert align("ca", "abc", default_cfg).total_cost == 3.0
    assert osa_distance("ca", "abc") == 3


def test_transposition_positions_replayable(default_cfg):
    path = align("abcd", "acbd", default_cfg)
    assert path.counts[TRANSPOSITION] == 1
    assert replay("abcd", path.ops) == "acbd"


def test_deletion_and_insertion_kinds(default_cfg):
    path = align("abc", "ac", default_cfg)
    assert path.counts[DELETION] == 1
    path = align("ac", "abc", default_cfg)
    assert path.counts[INSERTION] == 1
