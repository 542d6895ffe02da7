import numpy as np
import pytest

from isec.ann_index import ExactIndex, HnswIndex, IndexParams, build_index, recall_at_k


def unit_vectors(n: int, dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    vectors = rng.normal(size=(n, dim))
    return vectors / np.linalg.norm(vectors, axis=1)[:, None]


def test_params_invariants():
    with pytest.raises(ValueError):
        IndexParams(k=0)
    with pytest.raises(ValueError):
        IndexParams(k=10, ef_search=5)
    with pytest.raises(ValueError):
        IndexParams(m=1)
    with pytest.raises(ValueError):
        IndexParams(mode="flat")


def test_two_vectors_neighbor_each_other():
    vectors = unit_vectors(2, 16, seed=1)
    for mode in ("exact", "hnsw"):
        index = build_index(vectors, IndexParams(mode=mode, k=1))
        assert [node for node, _ in index.search(0, 1)] == [1]
        assert [node for node, _ in index.search(1, 1)] == [0]


def test_build_rejects_degenerate_input():
    with pytest.raises(ValueError):
        build_index(np.ones((1, 8)), IndexParams(mode="exact"))
    bad = np.ones((3, 8))
    bad[1] = 0.0
    with pytest.raises(ValueError):
        build_index(bad, IndexParams(mode="exact"))


def test_exact_matches_brute_force_scan():
    vectors = unit_vectors(50, 32, seed=2)
    index = build_index(vectors, IndexParams(mode="exact", k=5))
    sims = vectors @ vectors.T
    for q in range(50):
        expected = sorted(
            ((j, float(sims[q, j])) for j in range(50) if j != q),
            key=lambda item: (-item[1], item[0]),
        )[:5]
        got = index.search(q, 5)
        assert [node for node, _ in got] == [node for node, _ in expected]
        for (_, sim_got), (_, sim_want) in zip(got, expected):
            assert sim_got == pytest.approx(sim_want, abs=1e-12)


def test_full_retrieval_orders_everything():
    vectors = unit_vectors(20, 16, seed=3)
    index = build_index(vectors, IndexParams(mode="exact", k=19, ef_search=64))
    result = index.search(7, 19)
    assert len(result) == 19
    assert 7 not in {node for node, _ in result}
    sims = [sim for _, sim in result]
    assert sims == sorted(sims, reverse=True)


def test_duplicate_vectors_rank_first():
    vectors = unit_vectors(10, 16, seed=4)
    vectors[3] = vectors[0]
    index = build_index(vectors, IndexParams(mode="exact", k=3))
    top = index.search(0, 3)
    assert top[0][0] == 3
    assert top[0][1] == pytest.approx(1.0)


def test_hnsw_search_visits_sublinear():
    n = 1000
    vectors = unit_vectors(n, 64, seed=5)
    index = build_index(vectors, IndexParams(mode="hnsw", seed=11))
    for q in (17, 250, 999):
        index.search(q, 10, ef_search=16)
        assert index.last_search_visits < n / 2


def test_hnsw_counts_distance_evals():
    vectors = unit_vectors(100, 32, seed=6)
    index = build_index(vectors, IndexParams(mode="hnsw", seed=1))
    before = index.distance_evals
    index.search(0, 5)
    assert index.distance_evals > before


def test_hnsw_seeded_build_is_reproducible():
    vectors = unit_vectors(300, 32, seed=7)
    a = HnswIndex(vectors, IndexParams(mode="hnsw", seed=42))
    b = HnswIndex(vectors, IndexParams(mode="hnsw", seed=42))
    assert a._adjacency == b._adjacency
    for q in range(0, 300, 37):
        assert a.search(q, 10) == b.search(q, 10)


def test_exact_mode_is_deterministic():
    vectors = unit_vectors(40, 16, seed=8)
    a = ExactIndex(vectors, IndexParams(mode="exact"))
    b = ExactIndex(vectors, IndexParams(mode="exact"))
    for q in range(40):
        assert a.search(q, 7) == b.search(q, 7)


def test_hnsw_recall_smoke():
    vectors = unit_vectors(400, 64, seed=9)
    oracle = ExactIndex(vectors, IndexParams(mode="exact"))
    approx = HnswIndex(vectors, IndexParams(mode="hnsw", seed=3))
    assert recall_at_k(approx, oracle, 10) >= 0.9


def test_unknown_query_rejected():
    vectors = unit_vectors(10, 16, seed=10)
    index = build_index(vectors, IndexParams(mode="exact"))
    with pytest.raises(KeyError):
        index.search(99, 3)
