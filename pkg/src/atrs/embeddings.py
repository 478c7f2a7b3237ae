"""Word-vector table loading, tokenization, phrase pooling, and cosine similarity."""

from __future__ import annotations

import math
import unicodedata
import warnings
from dataclasses import dataclass, field

import numpy as np


class EmbeddingFormatError(ValueError):
    """Raised when a vector file violates the expected text layout."""


@dataclass(frozen=True)
class EmbeddingTable:
    """Immutable token -> dense vector mapping of fixed dimension."""

    dimension: int
    vectors: dict[str, np.ndarray] = field(default_factory=dict)

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def get(self, token: str) -> np.ndarray | None:
        return self.vectors.get(token)


@dataclass(frozen=True)
class PhraseVector:
    """Mean-pooled vector for a token sequence; token_hits counts the pooled in-vocabulary tokens."""

    values: np.ndarray
    token_hits: int


def tokenize(text: str) -> list[str]:
    """Lowercase, replace Unicode punctuation with spaces, split on whitespace runs.

    No stemming, no lemmatization, no stop-word removal. Empty input gives
    an empty list.
    """
    lowered = text.lower()
    chars = [
        " " if unicodedata.category(ch).startswith("P") else ch for ch in lowered
    ]
    return "".join(chars).split()


def normalize_name(text: str) -> str:
    """Canonical form used for lookups: tokens re-joined with single spaces."""
    return " ".join(tokenize(text))


def load_embeddings(source) -> EmbeddingTable:
    """Parse a plain-text vector file: header "<count> <dim>", then one token per line.

    Duplicate tokens keep the first occurrence and emit a warning. Any
    non-finite value, wrong-arity line, or malformed header is an error.
    """
    header = source.readline()
    if not header:
        raise EmbeddingFormatError("empty vector file: missing '<count> <dimension>' header")
    parts = header.split()
    if len(parts) != 2:
        raise EmbeddingFormatError(f"malformed header {header!r}: expected '<count> <dimension>'")
    try:
        declared_count, dimension = int(parts[0]), int(parts[1])
    except ValueError:
        raise EmbeddingFormatError(f"malformed header {header!r}: fields must be integers") from None
    if dimension < 1:
        raise EmbeddingFormatError(f"dimension must be >= 1, got {dimension}")
    if declared_count < 0:
        raise EmbeddingFormatError(f"token count must be >= 0, got {declared_count}")

    vectors: dict[str, np.ndarray] = {}
    for lineno, line in enumerate(source, start=2):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 1 + dimension:
            raise EmbeddingFormatError(
                f"line {lineno}: expected token plus {dimension} values, got {len(fields)} fields"
            )
        token = fields[0]
        try:
            values = [float(x) for x in fields[1:]]
        except ValueError:
            raise EmbeddingFormatError(f"line {lineno}: unparseable number") from None
        if not all(math.isfinite(v) for v in values):
            raise EmbeddingFormatError(f"line {lineno}: non-finite value for token {token!r}")
        if token in vectors:
            warnings.warn(
                f"duplicate token {token!r} at line {lineno}; keeping first occurrence",
                RuntimeWarning,
                stacklevel=2,
            )
            continue
        vectors[token] = np.array(values, dtype=np.float64)

    if declared_count and declared_count != len(vectors):
        warnings.warn(
            f"header declared {declared_count} tokens but file provided {len(vectors)}",
            RuntimeWarning,
            stacklevel=2,
        )
    return EmbeddingTable(dimension=dimension, vectors=vectors)


def embed_phrase(table: EmbeddingTable, tokens) -> PhraseVector | None:
    """Component-wise mean over in-vocabulary token vectors; None when nothing is known."""
    hits = [table.vectors[t] for t in tokens if t in table.vectors]
    if not hits:
        return None
    if len(hits) == 1:
        # mean of a single vector must equal it exactly
        return PhraseVector(values=hits[0].copy(), token_hits=1)
    return PhraseVector(values=np.mean(hits, axis=0), token_hits=len(hits))


def cosine(u, v) -> float:
    """Cosine similarity clamped to [-1, 1]; rejects zero-norm or mismatched inputs."""
    a = np.asarray(u, dtype=np.float64)
    b = np.asarray(v, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"vector length mismatch: {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine is undefined for zero-norm vectors")
    score = float(np.dot(a, b)) / (na * nb)
    return max(-1.0, min(1.0, score))
