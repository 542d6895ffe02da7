import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isec._fastdist import TaxonomyDistancer
from isec.cost_model import CostConfig
from isec.edit_engine import align_stats

LABELS = ["caba", "cba", "pba", "gba", "ba", "santa fe", "santa cruz", "x", "0O1l"]

CONFIGS = [
    CostConfig(),
    CostConfig(
        sub_overrides={("a", "b"): 0.3, ("0", "O"): 0.2},
        ins_overrides={"s": 0.4},
        del_overrides={" ": 0.1},
        trans_overrides={("a", "c"): 0.25},
    ),
    CostConfig(sub_overrides={("a", "b"): 0.3}, symmetric_subs=False, default_cost=0.8),
]


@pytest.mark.parametrize("cfg", CONFIGS)
def test_matches_scalar_engine_on_fixed_queries(cfg):
    distancer = TaxonomyDistancer(LABELS, cfg)
    for query in ["cba", "ba", "santa f", "", "zzz", "caba ", "0Ol1"]:
        fast = distancer.distances(query)
        for idx, label in enumerate(LABELS):
            expected = 0.0 if query == label else align_stats(query, label, cfg)[0]
            assert fast[idx] == pytest.approx(expected, abs=1e-9)


@settings(max_examples=150, deadline=None)
@given(query=st.text(alphabet="abc 0O", max_size=14))
def test_matches_scalar_engine_property(query):
    cfg = CONFIGS[1]
    distancer = TaxonomyDistancer(LABELS, cfg)
    fast = distancer.distances(query)
    rng = random.Random(len(query))
    for idx in rng.sample(range(len(LABELS)), 3):
        label = LABELS[idx]
        expected = 0.0 if query == label else align_stats(query, label, cfg)[0]
        assert fast[idx] == pytest.approx(expected, abs=1e-9)


def test_identity_distance_zero():
    distancer = TaxonomyDistancer(LABELS, CostConfig())
    assert distancer.distances("caba")[0] == 0.0
