"""Ranked-output serialization and run summaries.

Output files are deterministic: given the same input, config, and seed the
bytes are identical. That is why wall-clock timings never enter the files;
they are returned separately for printing. Both formats carry a fingerprint
of the full configuration so results can be traced back to the exact
parameters that produced them.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json

from .ann_index import IndexParams
from .core import PairScore, RankStats
from .cost_model import CostConfig, config_to_dict

__all__ = [
    "config_fingerprint",
    "run_summary",
    "ranking_to_csv",
    "ranking_to_json",
    "write_ranking",
    "pair_to_dict",
]

CSV_COLUMNS = ["rank", "label_i", "label_j", "isec", "fmn", "dsn", "cm", "cp", "cmp", "flags"]


def config_fingerprint(cfg: CostConfig, params: IndexParams, extra: dict | None = None) -> str:
    """Stable digest of everything that shapes a ranking."""
    payload = {
        "config": config_to_dict(cfg),
        "index": {
            "m": params.m,
            "ef_construction": params.ef_construction,
            "ef_search": params.ef_search,
            "k": params.k,
            "mode": params.mode,
            "seed": params.seed,
        },
        "extra": extra or {},
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def run_summary(stats: RankStats) -> dict:
    """Deterministic run facts: evaluation counts and the speedup ratio.

    The brute-force equivalent is the all-pairs alignment count the hybrid
    pipeline avoided; timings are intentionally not part of this record.
    """
    return {
        "n_labels": stats.n_labels,
        "k": stats.k,
        "mode": stats.mode,
        "morph_evaluations": stats.morph_evaluations,
        "ann_distance_evals": stats.ann_distance_evals,
        "pairs_scored": stats.pairs_scored,
        "brute_force_equivalent": stats.brute_force_equivalent,
        "evaluation_ratio": stats.evaluation_ratio,
        "unique_pair_ratio": stats.unique_pair_ratio,
    }


def pair_to_dict(rank: int, score: PairScore, include_path: bool = True) -> dict:
    out = {
        "rank": rank,
        "i": score.i,
        "j": score.j,
        "label_i": score.label_i,
        "label_j": score.label_j,
        "isec": score.isec,
        "fmn": score.fmn,
        "dsn": score.dsn,
        "cm": score.cm,
        "cp": score.cp,
        "cmp": score.cmp,
        "similarity": score.similarity,
        "flags": list(score.flags),
    }
    if include_path:
        out["path"] = score.path.to_dict() if score.path is not None else None
    return out


def ranking_to_csv(scores: list[PairScore], top_m: int | None = None) -> str:
    """Spreadsheet-friendly ranking; floats use shortest round-trip form."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rank, score in enumerate(scores[:top_m], start=1):
        writer.writerow(
            [
                rank,
                score.label_i,
                score.label_j,
                repr(score.isec),
                repr(score.fmn),
                repr(score.dsn),
                repr(score.cm),
                repr(score.cp),
                repr(score.cmp),
                ";".join(score.flags),
            ]
        )
    return buffer.getvalue()


def ranking_to_json(
    scores: list[PairScore],
    stats: RankStats,
    fingerprint: str,
    top_m: int | None = None,
    normalization: dict | None = None,
) -> str:
    payload = {
        "fingerprint": fingerprint,
        "normalization": normalization or {},
        "summary": run_summary(stats),
        "pairs": [pair_to_dict(rank, score) for rank, score in enumerate(scores[:top_m], start=1)],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_ranking(
    scores: list[PairScore],
    path: str,
    fmt: str,
    stats: RankStats,
    fingerprint: str,
    top_m: int | None = None,
    normalization: dict | None = None,
) -> None:
    """Write the ranking as CSV or JSON; same inputs give identical bytes."""
    if fmt == "csv":
        text = ranking_to_csv(scores, top_m=top_m)
    elif fmt == "json":
        text = ranking_to_json(
            scores, stats, fingerprint, top_m=top_m, normalization=normalization
        )
    else:
        raise ValueError(f"unknown format {fmt!r}, expected 'csv' or 'json'")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
