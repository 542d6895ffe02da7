"""Dataset ingestion: CSV reading, label normalization, frequency derivation.

Raw label streams are normalized under an explicit, recorded policy before
analysis. Case folding is off by default on purpose: labels that differ only
by case are usually the interesting near-duplicates, and folding them away
silently would hide exactly the collisions the ranking should surface.
Turning the flag on merges them instead and records the merge in the
duplicate report.
"""
from __future__ import annotations

import csv
import unicodedata
from dataclasses import dataclass, field

from .core import Taxonomy
from .embedding import embed_labels, load_embeddings

__all__ = ["NormalizationPolicy", "DuplicateReport", "IngestionError", "read_dataset", "normalize_label"]


class IngestionError(ValueError):
    """Raised for malformed datasets: missing columns, bad counts, empty input."""


@dataclass(frozen=True)
class NormalizationPolicy:
    """How raw labels are canonicalized; recorded in every report."""

    trim: bool = True
    case_fold: bool = False
    nfc: bool = True
    collapse_whitespace: bool = True

    def to_dict(self) -> dict:
        return {
            "trim": self.trim,
            "case_fold": self.case_fold,
            "nfc": self.nfc,
            "collapse_whitespace": self.collapse_whitespace,
        }


def normalize_label(raw: str, policy: NormalizationPolicy) -> str:
    """Apply the policy; idempotent, so normalizing twice changes nothing."""
    label = raw
    if policy.nfc:
        label = unicodedata.normalize("NFC", label)
    if policy.collapse_whitespace:
        label = " ".join(label.split())
    elif policy.trim:
        label = label.strip()
    if policy.case_fold:
        label = label.casefold()
    return label


@dataclass
class DuplicateReport:
    """Raw spellings that merged into one normalized label, plus skipped rows."""

    collisions: dict[str, list[str]] = field(default_factory=dict)
    empty_rows: int = 0

    def to_dict(self) -> dict:
        return {
            "collisions": {k: sorted(v) for k, v in sorted(self.collisions.items())},
            "empty_rows": self.empty_rows,
        }


def read_dataset(
    path: str,
    label_column: str,
    freq_column: str | None = None,
    policy: NormalizationPolicy | None = None,
    embedding_dim: int = 256,
    embedding_seed: int = 0,
    embeddings_path: str | None = None,
    embeddings_fallback: bool = False,
) -> tuple[Taxonomy, DuplicateReport]:
    """Read a UTF-8 CSV (header row required) into a taxonomy.

    Frequencies are occurrence counts unless ``freq_column`` names a column
    of positive integers to sum instead. Raw labels that normalize to the
    same string are merged, with the variants listed in the duplicate
    report; rows whose label normalizes to the empty string are skipped and
    counted.
    """
    policy = policy or NormalizationPolicy()
    counts: dict[str, int] = {}
    variants: dict[str, set[str]] = {}
    report = DuplicateReport()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise IngestionError(f"{path}: empty file, expected a header row")
        if label_column not in reader.fieldnames:
            raise IngestionError(f"{path}: missing label column {label_column!r}")
        if freq_column is not None and freq_column not in reader.fieldnames:
            raise IngestionError(f"{path}: missing frequency column {freq_column!r}")
        for row_number, row in enumerate(reader, start=2):
            raw = row.get(label_column) or ""
            label = normalize_label(raw, policy)
            if not label:
                report.empty_rows += 1
                continue
            if freq_column is not None:
                cell = (row.get(freq_column) or "").strip()
                try:
                    weight = int(cell)
                except ValueError:
                    raise IngestionError(
                        f"{path}: row {row_number}: non-numeric value {cell!r} in {freq_column!r}"
                    ) from None
                if weight < 1:
                    raise IngestionError(
                        f"{path}: row {row_number}: frequency must be >= 1, got {weight}"
                    )
            else:
                weight = 1
            counts[label] = counts.get(label, 0) + weight
            variants.setdefault(label, set()).add(raw)
    if not counts:
        raise IngestionError(f"{path}: no usable labels found")
    if len(counts) < 2:
        raise IngestionError(f"{path}: need at least 2 distinct labels, found {len(counts)}")
    for label, raws in variants.items():
        if len(raws) > 1:
            report.collisions[label] = sorted(raws)
    labels = sorted(counts)
    frequencies = [counts[label] for label in labels]
    if embeddings_path is not None:
        matrix = load_embeddings(
            embeddings_path, labels, fallback_hash=embeddings_fallback, hash_seed=embedding_seed
        )
    else:
        matrix = embed_labels(labels, dim=embedding_dim, seed=embedding_seed)
    tax = Taxonomy.from_labels(labels, frequencies=frequencies, embeddings=matrix)
    return tax, report
