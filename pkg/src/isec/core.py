"""Composite fragility scores over a taxonomy of nominal labels.

Each scored pair combines three orthogonal signals:

* ``fmn`` — operational exposure: log10 of the pair's mean occurrence count;
* ``dsn`` — semantic distance: normalized cosine complement of the label
  embeddings;
* ``cmp`` — morphological distance: penalized mean cost of the minimal
  weighted edit path.

The index value is ``(1 + fmn) / (dsn**alpha * cmp**(1 - alpha))``, an
unbounded positive number meant purely for ordinal ranking: higher means the
pair is easier to confuse. ``rank_taxonomy`` runs the two-stage pipeline
(Top-K semantic retrieval, then exact edit alignment on those candidates),
which needs ``n * K`` alignments instead of ``n * (n - 1) / 2``;
``brute_force_ranking`` is the all-pairs reference.
"""
from __future__ import annotations

import dataclasses
import math
import time
import unicodedata
from dataclasses import dataclass, field

import numpy as np

from .ann_index import ExactIndex, HnswIndex, IndexParams, build_index
from .cost_model import CostConfig
from .edit_engine import PathSummary, align, align_stats, cmp_score
from .embedding import DSN_FLOOR, embed_labels

__all__ = [
    "Taxonomy",
    "PairScore",
    "RankStats",
    "RankingResult",
    "fmn",
    "isec_pair",
    "rank_taxonomy",
    "rank_with_index",
    "brute_force_ranking",
]

FLAG_DSN_CLAMPED = "dsn-clamped"
FLAG_CMP_CLAMPED = "cmp-clamped"
FLAG_DUPLICATE_COLLISION = "duplicate-collision"
FLAG_ASYMMETRIC_COST = "asymmetric-cost"

_CMP_FLOOR = 1e-6


@dataclass(frozen=True)
class Taxonomy:
    """Distinct normalized labels with occurrence counts and embeddings."""

    labels: tuple[str, ...]
    frequencies: np.ndarray
    embeddings: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n < 2:
            raise ValueError(f"a taxonomy needs at least 2 labels, got {n}")
        if len(set(self.labels)) != n:
            raise ValueError("taxonomy labels must be distinct")
        if self.frequencies.shape != (n,):
            raise ValueError("frequencies must align with labels")
        if np.any(self.frequencies < 1):
            raise ValueError("frequencies must be >= 1")
        if self.embeddings.ndim != 2 or self.embeddings.shape[0] != n:
            raise ValueError("embeddings must be an (n, dim) matrix")

    @classmethod
    def from_labels(
        cls,
        labels: list[str],
        frequencies: list[int] | None = None,
        embeddings: np.ndarray | None = None,
        dim: int = 256,
        seed: int = 0,
    ) -> "Taxonomy":
        """Build a taxonomy, hash-embedding the labels unless vectors are given."""
        freq = np.ones(len(labels), dtype=np.int64) if frequencies is None else np.asarray(
            frequencies, dtype=np.int64
        )
        if embeddings is None:
            embeddings = embed_labels(labels, dim=dim, seed=seed)
        return cls(labels=tuple(labels), frequencies=freq, embeddings=embeddings)

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class PairScore:
    """One scored unordered pair, with the decomposition needed to audit it.

    ``path`` is the witness edit path from ``label_i`` to ``label_j``; it is
    ``None`` only when a ranking was run in memory-lean mode and can always
    be recomputed with ``align``.
    """

    i: int
    j: int
    label_i: str
    label_j: str
    fmn: float
    dsn: float
    cm: float
    cp: float
    cmp: float
    isec: float
    similarity: float
    path: PathSummary | None
    flags: tuple[str, ...] = ()


@dataclass
class RankStats:
    """Instrumentation for one ranking run."""

    n_labels: int
    k: int
    mode: str
    morph_evaluations: int = 0
    ann_distance_evals: int = 0
    pairs_scored: int = 0
    build_seconds: float = 0.0
    score_seconds: float = 0.0

    @property
    def brute_force_equivalent(self) -> int:
        return self.n_labels * (self.n_labels - 1) // 2

    @property
    def evaluation_ratio(self) -> float:
        """Brute-force-equivalent alignments per alignment actually done."""
        if self.morph_evaluations == 0:
            return float("inf")
        return self.brute_force_equivalent / self.morph_evaluations

    @property
    def unique_pair_ratio(self) -> float:
        """Same ratio counting deduplicated pairs: 1.0 for a full exact run."""
        if self.pairs_scored == 0:
            return float("inf")
        return self.brute_force_equivalent / self.pairs_scored


@dataclass
class RankingResult:
    scores: list[PairScore]
    stats: RankStats
    index: ExactIndex | HnswIndex | None = field(default=None, repr=False)


def fmn(f_i: int, f_j: int) -> float:
    """log10 of the mean occurrence count of the pair; 0 when both counts are 1."""
    if f_i < 1 or f_j < 1:
        raise ValueError(f"frequencies must be >= 1, got ({f_i}, {f_j})")
    return math.log10((f_i + f_j) / 2.0)


def isec_pair(fmn_value: float, dsn_value: float, cmp_value: float, alpha: float) -> float:
    """Composite sensitivity of one pair: ``(1 + fmn) / (dsn**a * cmp**(1-a))``.

    ``alpha`` near 1 weighs semantic distance (long descriptive labels);
    near 0 it weighs morphological cost (short codes). The result is
    unbounded above and strictly positive.
    """
    if dsn_value <= 0.0:
        raise ValueError(f"dsn must be > 0, got {dsn_value}")
    if cmp_value <= 0.0:
        raise ValueError(f"cmp must be > 0, got {cmp_value}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    if fmn_value < 0.0:
        raise ValueError(f"fmn must be >= 0, got {fmn_value}")
    return (1.0 + fmn_value) / (dsn_value**alpha * cmp_value ** (1.0 - alpha))


def _collision_key(label: str) -> str:
    return " ".join(unicodedata.normalize("NFC", label).casefold().split())


def _score_direction(
    tax: Taxonomy,
    cfg: CostConfig,
    i: int,
    j: int,
    similarity: float,
    keep_paths: bool,
) -> PairScore:
    """Score the ordered pair (i -> j) from an already-retrieved similarity."""
    label_i, label_j = tax.labels[i], tax.labels[j]
    flags: list[str] = []

    raw_dsn = (1.0 - similarity) / 2.0
    dsn_value = min(max(raw_dsn, DSN_FLOOR), 1.0)
    if raw_dsn < DSN_FLOOR:
        flags.append(FLAG_DSN_CLAMPED)

    path: PathSummary | None
    if keep_paths:
        path = align(label_i, label_j, cfg)
        cm, cp, n_ops = path.cm, path.cp, path.n_ops
    else:
        total, n_ops, cp, _ = align_stats(label_i, label_j, cfg)
        cm = total / n_ops
        path = None
    cmp_value = cm + cfg.k * cp
    if cmp_value < _CMP_FLOOR:
        cmp_value = _CMP_FLOOR
        flags.append(FLAG_CMP_CLAMPED)

    if _collision_key(label_i) == _collision_key(label_j):
        flags.append(FLAG_DUPLICATE_COLLISION)

    fmn_value = fmn(int(tax.frequencies[i]), int(tax.frequencies[j]))
    isec_value = isec_pair(fmn_value, dsn_value, cmp_value, cfg.alpha)
    return PairScore(
        i=i,
        j=j,
        label_i=label_i,
        label_j=label_j,
        fmn=fmn_value,
        dsn=dsn_value,
        cm=cm,
        cp=cp,
        cmp=cmp_value,
        isec=isec_value,
        similarity=similarity,
        path=path,
        flags=tuple(flags),
    )


def _sorted_scores(per_pair: dict[tuple[int, int], PairScore]) -> list[PairScore]:
    return sorted(per_pair.values(), key=lambda s: (-s.isec, s.dsn, s.i, s.j))


def _merge(
    per_pair: dict[tuple[int, int], PairScore], score: PairScore
) -> None:
    """Deduplicate (i,j)/(j,i) keeping the max-similarity retrieval; ties keep
    the higher score, then the canonical (low id first) direction. Directions
    that disagree on the score are flagged as asymmetric."""
    key = (score.i, score.j) if score.i < score.j else (score.j, score.i)
    cur = per_pair.get(key)
    if cur is None:
        per_pair[key] = score
        return
    if cur.isec != score.isec:
        flags = tuple(dict.fromkeys(cur.flags + score.flags + (FLAG_ASYMMETRIC_COST,)))
        winner = score if (score.similarity, score.isec) > (cur.similarity, cur.isec) else cur
        per_pair[key] = dataclasses.replace(winner, flags=flags)
        return
    if score.similarity > cur.similarity or (
        score.similarity == cur.similarity and (score.i, score.j) == key and (cur.i, cur.j) != key
    ):
        per_pair[key] = score


def rank_with_index(
    tax: Taxonomy,
    cfg: CostConfig,
    index: ExactIndex | HnswIndex,
    k: int,
    keep_paths: bool = True,
) -> RankingResult:
    """Score the Top-K semantic neighbors of every label and rank the pairs.

    Exactly ``n * K`` edit alignments are performed (both retrieval
    directions of a pair count); the result deduplicates to unordered pairs,
    sorted by score descending with ties broken by semantic distance and
    label ids.
    """
    k = min(k, tax.n - 1)
    if k < 1:
        raise ValueError("k must be >= 1")
    stats = RankStats(n_labels=tax.n, k=k, mode=type(index).__name__.replace("Index", "").lower())
    ann_evals_before = index.distance_evals
    per_pair: dict[tuple[int, int], PairScore] = {}
    started = time.perf_counter()
    for i in range(tax.n):
        for j, similarity in index.search(i, k):
            score = _score_direction(tax, cfg, i, j, similarity, keep_paths)
            stats.morph_evaluations += 1
            _merge(per_pair, score)
    stats.score_seconds = time.perf_counter() - started
    stats.ann_distance_evals = index.distance_evals - ann_evals_before
    stats.pairs_scored = len(per_pair)
    return RankingResult(scores=_sorted_scores(per_pair), stats=stats, index=index)


def rank_taxonomy(
    tax: Taxonomy,
    cfg: CostConfig,
    params: IndexParams,
    k: int | None = None,
    keep_paths: bool = True,
) -> RankingResult:
    """Build the retrieval index, then rank via :func:`rank_with_index`."""
    started = time.perf_counter()
    index = build_index(tax.embeddings, params)
    build_seconds = time.perf_counter() - started
    result = rank_with_index(tax, cfg, index, k=params.k if k is None else k, keep_paths=keep_paths)
    result.stats.build_seconds = build_seconds
    return result


def brute_force_ranking(
    tax: Taxonomy, cfg: CostConfig, keep_paths: bool = True
) -> RankingResult:
    """All-pairs reference ranking: every unordered pair is aligned once.

    With direction-sensitive costs both orientations are evaluated and the
    higher score kept, mirroring the pipeline's deduplication rule.
    """
    stats = RankStats(n_labels=tax.n, k=tax.n - 1, mode="brute")
    norms = np.linalg.norm(tax.embeddings, axis=1)
    if np.any(norms == 0.0):
        raise ValueError("cannot score zero-norm embeddings")
    matrix = tax.embeddings / norms[:, None]
    symmetric = cfg.is_symmetric
    per_pair: dict[tuple[int, int], PairScore] = {}
    started = time.perf_counter()
    for i in range(tax.n):
        sims = matrix @ matrix[i]
        for j in range(i + 1, tax.n):
            similarity = float(sims[j])
            score = _score_direction(tax, cfg, i, j, similarity, keep_paths)
            stats.morph_evaluations += 1
            _merge(per_pair, score)
            if not symmetric:
                reverse = _score_direction(tax, cfg, j, i, similarity, keep_paths)
                stats.morph_evaluations += 1
                _merge(per_pair, reverse)
    stats.score_seconds = time.perf_counter() - started
    stats.pairs_scored = len(per_pair)
    return RankingResult(scores=_sorted_scores(per_pair), stats=stats)
