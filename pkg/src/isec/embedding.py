"""Label embeddings and the normalized semantic distance.

The default embedder hashes character n-grams (with boundary markers) into a
fixed number of buckets and L2-normalizes the counts. It is deterministic
across runs and platforms, needs no external model, and works on arbitrary
labels (codes, abbreviations, free text). Higher-quality vectors from any
external model can be supplied through :func:`load_embeddings` instead;
loaded vectors are used as stored, only the cosine's own normalization is
applied.

Semantic distance is ``(1 - cosine) / 2``, floored at ``DSN_FLOOR`` so that
embedding-space collisions between distinct labels stay scoreable (and rise
to the very top of the ranking, which is the signal we want).
"""
from __future__ import annotations

import hashlib
import warnings

import numpy as np

__all__ = [
    "DSN_FLOOR",
    "EmbeddingError",
    "embed_ngram_hash",
    "embed_labels",
    "load_embeddings",
    "cosine_similarity",
    "dsn",
    "dsn_from_similarity",
]

DSN_FLOOR = 1e-6

_BOUNDARY_START = "\x02"
_BOUNDARY_END = "\x03"


class EmbeddingError(ValueError):
    """Raised for empty labels, dimension mismatches, or zero-norm vectors."""


def _bucket(gram: str, dim: int, seed: int) -> int:
    digest = hashlib.blake2b(
        gram.encode("utf-8"), digest_size=8, salt=seed.to_bytes(8, "little")
    ).digest()
    return int.from_bytes(digest, "little") % dim


def embed_ngram_hash(
    label: str, dim: int = 256, n_min: int = 2, n_max: int = 4, seed: int = 0
) -> np.ndarray:
    """Hash the character n-grams of ``label`` into a unit-norm vector.

    Boundary markers are added before extracting n-grams so prefixes and
    suffixes are distinguishable from interior fragments.
    """
    if not label:
        raise EmbeddingError("cannot embed an empty label")
    if dim < 8:
        raise EmbeddingError(f"embedding dimension must be >= 8, got {dim}")
    if n_min < 1 or n_max < n_min:
        raise EmbeddingError(f"bad n-gram range [{n_min}, {n_max}]")
    padded = _BOUNDARY_START + label + _BOUNDARY_END
    vec = np.zeros(dim, dtype=np.float64)
    for n in range(n_min, n_max + 1):
        for start in range(len(padded) - n + 1):
            vec[_bucket(padded[start : start + n], dim, seed)] += 1.0
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise EmbeddingError(f"label {label!r} produced no n-grams in [{n_min}, {n_max}]")
    return vec / norm


def embed_labels(
    labels: list[str], dim: int = 256, n_min: int = 2, n_max: int = 4, seed: int = 0
) -> np.ndarray:
    """Stack hash embeddings for a label list into an (n, dim) matrix."""
    out = np.empty((len(labels), dim), dtype=np.float64)
    for row, label in enumerate(labels):
        out[row] = embed_ngram_hash(label, dim=dim, n_min=n_min, n_max=n_max, seed=seed)
    return out


def load_embeddings(
    path: str, labels: list[str], fallback_hash: bool = False, hash_seed: int = 0
) -> np.ndarray:
    """Read precomputed vectors and align them to ``labels`` order.

    The file is UTF-8 text, one row per label: the label, a tab, then the
    vector components separated by spaces. Labels must match the normalized
    taxonomy labels byte for byte. Rows with a deviating dimension raise
    :class:`EmbeddingError`. Labels absent from the file raise as well,
    unless ``fallback_hash`` is set, in which case they get a hash embedding
    of the same dimension and a warning is emitted.
    """
    vectors: dict[str, np.ndarray] = {}
    dim: int | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                label, values = line.split("\t", 1)
            except ValueError:
                raise EmbeddingError(f"{path}:{lineno}: expected 'label<TAB>v1 v2 ...'") from None
            try:
                vec = np.array([float(v) for v in values.split()], dtype=np.float64)
            except ValueError:
                raise EmbeddingError(f"{path}:{lineno}: non-numeric vector component") from None
            if dim is None:
                dim = vec.shape[0]
                if dim < 1:
                    raise EmbeddingError(f"{path}:{lineno}: empty vector")
            elif vec.shape[0] != dim:
                raise EmbeddingError(
                    f"{path}:{lineno}: dimension {vec.shape[0]} does not match {dim}"
                )
            vectors[label] = vec
    if dim is None:
        raise EmbeddingError(f"{path}: no vectors found")
    missing = [label for label in labels if label not in vectors]
    if missing and not fallback_hash:
        raise EmbeddingError(f"{path}: missing vectors for {len(missing)} label(s): {missing[:5]}")
    out = np.empty((len(labels), dim), dtype=np.float64)
    for row, label in enumerate(labels):
        if label in vectors:
            out[row] = vectors[label]
        else:
            out[row] = embed_ngram_hash(label, dim=dim, seed=hash_seed)
    if missing:
        warnings.warn(
            f"{len(missing)} label(s) missing from {path}; hash embeddings substituted",
            stacklevel=2,
        )
    return out


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of the angle between two vectors; raises on zero norms."""
    if a.shape != b.shape:
        raise EmbeddingError(f"dimension mismatch: {a.shape} vs {b.shape}")
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise EmbeddingError("cosine undefined for zero-norm vectors")
    return float(np.dot(a, b)) / (norm_a * norm_b)


def dsn_from_similarity(similarity: float) -> float:
    """Map a cosine similarity to the normalized semantic distance in [floor, 1]."""
    value = (1.0 - similarity) / 2.0
    if value > 1.0:
        return 1.0
    if value < DSN_FLOOR:
        return DSN_FLOOR
    return value


def dsn(a: np.ndarray, b: np.ndarray) -> float:
    """Normalized semantic distance between two embedding vectors."""
    return dsn_from_similarity(cosine_similarity(a, b))
