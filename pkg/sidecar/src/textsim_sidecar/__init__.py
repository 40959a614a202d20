"""Text-similarity sidecar.

A small standalone service that scores pairs of short strings for
semantic similarity and speaks a newline-delimited JSON protocol over
stdio or a local TCP socket (see docs/sidecar-protocol.md in the host
repository).  The default scorer embeds character n-grams with a stable
hash and combines token-level cosines with a greedy soft F1, so it has
no model download and gives deterministic scores across processes.
"""

from .scorer import CharNgramScorer, ScorerConfig, load_scorer

__version__ = "0.1.0"

__all__ = ["CharNgramScorer", "ScorerConfig", "load_scorer", "__version__"]
