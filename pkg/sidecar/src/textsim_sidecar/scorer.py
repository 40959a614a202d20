"""Similarity scorers.

The default scorer is deterministic and dependency-light: tokens are
embedded as L2-normalised bags of hashed character n-grams and a pair of
texts is scored with a greedy soft F1 over the token cosine matrix.
Character n-grams make the score robust to inflection ("court" vs
"courts") without any model download, and the hash is a stable CRC so
two processes always agree.  A sentence-transformer backend can be
selected through the config for setups that want a learned model; it is
imported lazily so the default path has no heavy dependencies.

Scorers promise:
  * ``score_pair(x, x) >= 0.99`` for any non-blank ``x``,
  * blank inputs short-circuit before any model call (both blank -> 1.0,
    one blank -> 0.0),
  * every emitted score is clamped to [0.0, 1.0].
"""

from __future__ import annotations

import json
import math
import unicodedata
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import numpy as np

MODEL_NAME = "charngram-greedyf1"
# Version of the scoring function, not of the package.  Bump whenever
# tokenisation, hashing, or the F1 combination changes, because golden
# scores are frozen against it.
MODEL_VERSION = "0.1.0"

_TOKEN_CACHE_LIMIT = 65536


class ScorerLoadError(Exception):
    """Raised when the configured scorer cannot be constructed."""


@dataclass(frozen=True)
class ScorerConfig:
    """Pinned scorer settings.

    ``model`` selects the backend ("charngram-greedyf1" or a
    sentence-transformers model name), ``device`` only matters for the
    transformer backend, and ``dim``/``ngram_sizes`` shape the hashed
    embedding space.  ``max_batch`` bounds how many pairs are scored in
    one vectorised call.
    """

    model: str = MODEL_NAME
    device: str = "cpu"
    dim: int = 512
    ngram_sizes: tuple[int, ...] = (2, 3, 4)
    max_batch: int = 1024

    def __post_init__(self) -> None:
        if self.dim < 8:
            raise ValueError(f"dim must be >= 8, got {self.dim}")
        if not self.ngram_sizes or any(n < 1 for n in self.ngram_sizes):
            raise ValueError(f"ngram_sizes must be positive, got {self.ngram_sizes!r}")
        if self.max_batch < 1:
            raise ValueError(f"max_batch must be >= 1, got {self.max_batch}")

    @classmethod
    def from_file(cls, path: str | Path) -> "ScorerConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise ScorerLoadError(f"config {path} must hold a JSON object")
        known = {f: raw[f] for f in cls.__dataclass_fields__ if f in raw}
        unknown = set(raw) - set(cls.__dataclass_fields__)
        if unknown:
            raise ScorerLoadError(f"config {path} has unknown keys: {sorted(unknown)}")
        if "ngram_sizes" in known:
            known["ngram_sizes"] = tuple(known["ngram_sizes"])
        try:
            return cls(**known)
        except (TypeError, ValueError) as exc:
            raise ScorerLoadError(f"config {path} is invalid: {exc}") from exc


class Scorer(Protocol):
    identity: str

    def score_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]: ...


def tokenize(text: str) -> list[str]:
    """Casefold, strip punctuation and symbols, split on whitespace."""
    out: list[str] = []
    for ch in text.casefold():
        cat = unicodedata.category(ch)
        out.append(" " if cat[0] in ("P", "S") else ch)
    return "".join(out).split()


def _blank_score(a: str, b: str) -> float | None:
    """Blank convention, applied before any model call."""
    a_blank = not a.strip()
    b_blank = not b.strip()
    if a_blank and b_blank:
        return 1.0
    if a_blank or b_blank:
        return 0.0
    return None


def _clamp(x: float) -> float:
    if math.isnan(x):
        return 0.0
    return min(1.0, max(0.0, x))


class CharNgramScorer:
    """Greedy soft F1 over hashed character n-gram token embeddings."""

    def __init__(self, config: ScorerConfig | None = None) -> None:
        self.config = config or ScorerConfig()
        self.identity = f"{MODEL_NAME}-{self.config.dim}d@{MODEL_VERSION}"
        self._token_vectors: dict[str, np.ndarray] = {}

    def _token_vector(self, token: str) -> np.ndarray:
        cached = self._token_vectors.get(token)
        if cached is not None:
            return cached
        vec = np.zeros(self.config.dim, dtype=np.float64)
        # Boundary markers let short tokens still produce n-grams and
        # distinguish prefixes from infixes.
        marked = f"<{token}>"
        for n in self.config.ngram_sizes:
            for i in range(max(0, len(marked) - n + 1)):
                gram = marked[i : i + n]
                vec[zlib.crc32(gram.encode("utf-8")) % self.config.dim] += 1.0
        norm = float(np.linalg.norm(vec))
        if norm > 0.0:
            vec /= norm
        if len(self._token_vectors) >= _TOKEN_CACHE_LIMIT:
            self._token_vectors.clear()
        self._token_vectors[token] = vec
        return vec

    def _embed(self, tokens: list[str]) -> np.ndarray:
        return np.stack([self._token_vector(t) for t in tokens])

    def score_pair(self, a: str, b: str) -> float:
        blank = _blank_score(a, b)
        if blank is not None:
            return blank
        ta, tb = tokenize(a), tokenize(b)
        # Same convention one level down: text that tokenises to nothing
        # (pure punctuation) behaves like blank text.
        if not ta or not tb:
            return 1.0 if not ta and not tb else 0.0
        sims = self._embed(ta) @ self._embed(tb).T
        precision = float(np.mean(np.max(sims, axis=1)))
        recall = float(np.mean(np.max(sims, axis=0)))
        if precision + recall <= 0.0:
            return 0.0
        return _clamp(2.0 * precision * recall / (precision + recall))

    def score_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        return _score_with_split(self.score_pair, pairs)


class TransformerScorer:
    """Sentence-transformer cosine backend, imported lazily."""

    def __init__(self, config: ScorerConfig) -> None:
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:
            raise ScorerLoadError(
                f"model {config.model!r} needs the sentence-transformers extra"
            ) from exc
        try:
            self._model = SentenceTransformer(config.model, device=config.device)
        except Exception as exc:
            raise ScorerLoadError(f"could not load model {config.model!r}: {exc}") from exc
        self.config = config
        self.identity = f"{config.model}@{MODEL_VERSION}"

    def score_pair(self, a: str, b: str) -> float:
        blank = _blank_score(a, b)
        if blank is not None:
            return blank
        vecs = self._model.encode([a, b], normalize_embeddings=True)
        # Cosine lands in [-1, 1]; negative similarity is just "unrelated".
        return _clamp(float(np.dot(vecs[0], vecs[1])))

    def score_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        return _score_with_split(self.score_pair, pairs)


def _score_with_split(
    score_one, pairs: Sequence[tuple[str, str]]
) -> list[float]:
    """Score pairs, halving the batch on MemoryError before giving up."""
    try:
        return [score_one(a, b) for a, b in pairs]
    except MemoryError:
        if len(pairs) <= 1:
            raise
        mid = len(pairs) // 2
        return _score_with_split(score_one, pairs[:mid]) + _score_with_split(
            score_one, pairs[mid:]
        )


def load_scorer(config: ScorerConfig) -> Scorer:
    """Construct the configured scorer or raise ScorerLoadError."""
    if config.model == MODEL_NAME:
        return CharNgramScorer(config)
    return TransformerScorer(config)
