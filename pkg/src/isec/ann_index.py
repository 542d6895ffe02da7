"""Top-K cosine neighbor retrieval over label embeddings.

Two interchangeable index modes sit behind one interface: ``exact`` scans
the whole matrix (provably optimal, the oracle), ``hnsw`` is a native
hierarchical small-world graph giving sublinear searches. The HNSW build is
seeded, so a fixed seed yields a fixed graph, and both modes count their
distance evaluations so pipeline speedups can be reported from real
instrumentation instead of asymptotic claims.

Neighbor lists are ``(label_id, cosine_similarity)`` pairs in descending
similarity, self excluded; equal similarities rank the lower id first.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["IndexParams", "ExactIndex", "HnswIndex", "build_index", "recall_at_k"]

NeighborList = list[tuple[int, float]]


@dataclass(frozen=True)
class IndexParams:
    """Retrieval knobs shared by both index modes.

    ``k`` is the default neighbor count per query; ``ef_search`` bounds the
    candidate frontier in hnsw mode and must be at least ``k``.
    """

    m: int = 16
    ef_construction: int = 200
    ef_search: int = 64
    k: int = 10
    mode: str = "hnsw"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.ef_search < self.k:
            raise ValueError(f"ef_search ({self.ef_search}) must be >= k ({self.k})")
        if self.m < 2:
            raise ValueError(f"m must be >= 2, got {self.m}")
        if self.mode not in ("hnsw", "exact"):
            raise ValueError(f"mode must be 'hnsw' or 'exact', got {self.mode!r}")


def _normalize(vectors: np.ndarray) -> np.ndarray:
    if vectors.ndim != 2 or vectors.shape[0] < 2:
        raise ValueError("index needs a 2-D matrix with at least 2 vectors")
    norms = np.linalg.norm(vectors, axis=1)
    if np.any(norms == 0.0):
        raise ValueError("cannot index zero-norm vectors")
    return vectors / norms[:, None]


class ExactIndex:
    """Flat index: every search is a full cosine scan, provably optimal."""

    def __init__(self, vectors: np.ndarray, params: IndexParams):
        self._matrix = _normalize(np.asarray(vectors, dtype=np.float64))
        self.params = params
        self.distance_evals = 0

    def __len__(self) -> int:
        return self._matrix.shape[0]

    def similarities(self, query_id: int) -> np.ndarray:
        """Cosine similarity of the indexed query against every vector."""
        if not 0 <= query_id < len(self):
            raise KeyError(f"unknown label id {query_id}")
        self.distance_evals += len(self) - 1
        return self._matrix @ self._matrix[query_id]

    def search(self, query_id: int, k: int | None = None) -> NeighborList:
        k = self.params.k if k is None else k
        sims = self.similarities(query_id)
        ids = np.arange(len(self))
        mask = ids != query_id
        sims, ids = sims[mask], ids[mask]
        order = np.lexsort((ids, -sims))[:k]
        return [(int(ids[i]), float(sims[i])) for i in order]


class HnswIndex:
    """Hierarchical navigable small-world graph over unit vectors.

    Graph distance is cosine distance (1 - similarity); reported neighbors
    carry similarity. The level generator is seeded and inserts run in id
    order, so builds are reproducible.
    """

    def __init__(self, vectors: np.ndarray, params: IndexParams):
        self._matrix = _normalize(np.asarray(vectors, dtype=np.float64))
        self.params = params
        self.distance_evals = 0
        self.last_search_visits = 0
        self._m = params.m
        self._m0 = 2 * params.m
        self._ml = 1.0 / math.log(params.m)
        # _adjacency[node][layer] -> list of neighbor ids
        self._adjacency: list[list[list[int]]] = []
        self._entry: int = 0
        self._top_layer: int = 0
        rng = np.random.default_rng(params.seed)
        levels = np.floor(-np.log(rng.uniform(size=self._matrix.shape[0])) * self._ml).astype(int)
        for node, level in enumerate(levels):
            self._insert(node, int(level))

    def __len__(self) -> int:
        return self._matrix.shape[0]

    def _distances(self, query: np.ndarray, ids: list[int]) -> np.ndarray:
        self.distance_evals += len(ids)
        return 1.0 - self._matrix[ids] @ query

    def _search_layer(
        self, query: np.ndarray, entry_points: list[tuple[float, int]], layer: int, ef: int
    ) -> list[tuple[float, int]]:
        """Beam search on one layer; returns (distance, id) sorted ascending."""
        visited = {node for _, node in entry_points}
        candidates = list(entry_points)
        heapq.heapify(candidates)
        results = [(-dist, node) for dist, node in entry_points]
        heapq.heapify(results)
        while candidates:
            dist, node = heapq.heappop(candidates)
            if dist > -results[0][0] and len(results) >= ef:
                break
            fresh = [nb for nb in self._adjacency[node][layer] if nb not in visited]
            if not fresh:
                continue
            visited.update(fresh)
            for nb_dist, nb in zip(self._distances(query, fresh), fresh):
                nb_dist = float(nb_dist)
                if len(results) < ef:
                    heapq.heappush(candidates, (nb_dist, nb))
                    heapq.heappush(results, (-nb_dist, nb))
                elif nb_dist < -results[0][0]:
                    heapq.heappush(candidates, (nb_dist, nb))
                    heapq.heapreplace(results, (-nb_dist, nb))
        self.last_search_visits = len(visited)
        return sorted((-neg, node) for neg, node in results)

    def _select_neighbors(self, candidates: list[tuple[float, int]], limit: int) -> list[int]:
        """Diversity-aware pruning: keep a candidate only when it is closer to
        the query than to anything already kept. No refill from the discards;
        saturating every node at the degree cap would densify the graph and
        destroy the sublinear search behavior."""
        if len(candidates) <= limit:
            return [node for _, node in sorted(candidates)]
        kept: list[int] = []
        for dist, node in sorted(candidates):
            if len(kept) >= limit:
                break
            if not kept:
                kept.append(node)
                continue
            to_kept = self._distances(self._matrix[node], kept)
            if dist < float(to_kept.min()):
                kept.append(node)
        return kept

    def _insert(self, node: int, level: int) -> None:
        self._adjacency.append([[] for _ in range(level + 1)])
        if node == 0:
            self._entry = node
            self._top_layer = level
            return
        query = self._matrix[node]
        dist = float(self._distances(query, [self._entry])[0])
        entry: list[tuple[float, int]] = [(dist, self._entry)]
        for layer in range(self._top_layer, level, -1):
            entry = self._search_layer(query, entry, layer, ef=1)[:1]
        for layer in range(min(level, self._top_layer), -1, -1):
            limit = self._m0 if layer == 0 else self._m
            candidates = self._search_layer(query, entry, layer, ef=self.params.ef_construction)
            neighbors = self._select_neighbors(candidates, limit)
            self._adjacency[node][layer] = list(neighbors)
            for nb in neighbors:
                links = self._adjacency[nb][layer]
                links.append(node)
                if len(links) > limit:
                    dists = self._distances(self._matrix[nb], links)
                    pruned = self._select_neighbors(
                        [(float(d), lid) for d, lid in zip(dists, links)], limit
                    )
                    self._adjacency[nb][layer] = pruned
            entry = candidates
        if level > self._top_layer:
            self._entry = node
            self._top_layer = level

    def search(self, query_id: int, k: int | None = None, ef_search: int | None = None) -> NeighborList:
        if not 0 <= query_id < len(self):
            raise KeyError(f"unknown label id {query_id}")
        k = self.params.k if k is None else k
        ef = max(self.params.ef_search if ef_search is None else ef_search, k + 1)
        query = self._matrix[query_id]
        dist = float(self._distances(query, [self._entry])[0])
        entry: list[tuple[float, int]] = [(dist, self._entry)]
        for layer in range(self._top_layer, 0, -1):
            entry = self._search_layer(query, entry, layer, ef=1)[:1]
        candidates = self._search_layer(query, entry, 0, ef=ef)
        out: NeighborList = []
        for dist, node in candidates:
            if node == query_id:
                continue
            out.append((node, 1.0 - dist))
            if len(out) == k:
                break
        return out


def build_index(vectors: np.ndarray, params: IndexParams) -> ExactIndex | HnswIndex:
    """Build an immutable index over the (n, dim) embedding matrix."""
    if params.mode == "exact":
        return ExactIndex(vectors, params)
    return HnswIndex(vectors, params)


def recall_at_k(approx: ExactIndex | HnswIndex, oracle: ExactIndex, k: int) -> float:
    """Mean fraction of the oracle's top-k found by the approximate index."""
    total = 0.0
    n = len(oracle)
    for query_id in range(n):
        truth = {node for node, _ in oracle.search(query_id, k)}
        found = {node for node, _ in approx.search(query_id, k)}
        total += len(truth & found) / len(truth)
    return total / n
