"""Categorical fragility analysis for nominal taxonomies.

Scores every pair of labels by how easily one can be mistyped or misread as
the other, combining weighted edit costs, embedding distance, and frequency
exposure into a single ordinal ranking, then validates that ranking with a
typo-injection simulator.
"""

from .ann_index import IndexParams, build_index, recall_at_k
from .core import (
    PairScore,
    RankingResult,
    RankStats,
    Taxonomy,
    brute_force_ranking,
    fmn,
    isec_pair,
    rank_taxonomy,
    rank_with_index,
)
from .cost_model import (
    ConfigError,
    CostConfig,
    load_config,
    lookup_del,
    lookup_ins,
    lookup_sub,
    lookup_trans,
    save_config,
)
from .edit_engine import EditOp, PathSummary, align, cmp_score, replay
from .embedding import DSN_FLOOR, dsn, embed_labels, embed_ngram_hash, load_embeddings
from .ingestion import DuplicateReport, IngestionError, NormalizationPolicy, read_dataset
from .perturb import (
    ConfusionStats,
    CorrelationReport,
    TypoModel,
    adjacency_from_config,
    classify_back,
    correlate,
    perturb,
    run_simulation,
    validate_ranking,
)
from .report import config_fingerprint, run_summary, write_ranking

__version__ = "0.1.0"

__all__ = [
    "IndexParams",
    "build_index",
    "recall_at_k",
    "PairScore",
    "RankingResult",
    "RankStats",
    "Taxonomy",
    "brute_force_ranking",
    "fmn",
    "isec_pair",
    "rank_taxonomy",
    "rank_with_index",
    "ConfigError",
    "CostConfig",
    "load_config",
    "lookup_del",
    "lookup_ins",
    "lookup_sub",
    "lookup_trans",
    "save_config",
    "EditOp",
    "PathSummary",
    "align",
    "cmp_score",
    "replay",
    "DSN_FLOOR",
    "dsn",
    "embed_labels",
    "embed_ngram_hash",
    "load_embeddings",
    "DuplicateReport",
    "IngestionError",
    "NormalizationPolicy",
    "read_dataset",
    "ConfusionStats",
    "CorrelationReport",
    "TypoModel",
    "adjacency_from_config",
    "classify_back",
    "correlate",
    "perturb",
    "run_simulation",
    "validate_ranking",
    "config_fingerprint",
    "run_summary",
    "write_ranking",
]
