"""Text similarity scorers used for node and edge-label comparison.

The builtin scorer is a token-multiset F1 over lowercased text with Unicode
punctuation stripped.  All scorers run behind `score_pairs`, which enforces
the blank convention (two blanks match perfectly, blank vs non-blank scores
zero) and clamps every returned value into [0, 1] so downstream metric code
can rely on the range unconditionally.
"""

from __future__ import annotations

import json
import re
import shlex
import socket
import subprocess
import threading
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence

import numpy as np


class Scorer(Protocol):
    """A batch similarity scorer over text pairs."""

    name: str

    def score(self, pairs: Sequence[tuple[str, str]]) -> list[float]: ...


def _strip_punctuation(text: str) -> str:
    return "".join(" " if unicodedata.category(ch).startswith("P") else ch for ch in text)


def tokenize(text: str) -> list[str]:
    """Lowercase, drop Unicode punctuation, split on whitespace."""
    return _strip_punctuation(text.lower()).split()


def token_f1(a: str, b: str) -> float:
    """Multiset F1 between the token bags of two strings.

    Blank handling lives in `score_pairs`; called directly, two empty token
    bags score 1.0.
    """
    ca, cb = Counter(tokenize(a)), Counter(tokenize(b))
    overlap = sum((ca & cb).values())
    total = sum(ca.values()) + sum(cb.values())
    if total == 0:
        return 1.0
    return 2.0 * overlap / total


class TokenF1Scorer:
    """Batch wrapper for `token_f1`; stateless and deterministic."""

    name = "token-f1"

    def score(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        return [token_f1(a, b) for a, b in pairs]


@dataclass
class ScoreStats:
    """Counters exposed for diagnostics (reported by the CLI under --verbose)."""

    pairs_scored: int = 0
    clamped: int = 0
    cache_hits: int = 0


@dataclass
class SimilarityEngine:
    """Applies a scorer with the blank convention, clamping and memoization.

    The cache is keyed on the exact text pair, so repeated node texts across a
    corpus are scored once per engine instance.
    """

    scorer: Scorer = field(default_factory=TokenF1Scorer)
    stats: ScoreStats = field(default_factory=ScoreStats)
    _cache: dict[tuple[str, str], float] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.scorer.name

    def score_pairs(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        out: list[float | None] = [None] * len(pairs)
        todo: list[tuple[str, str]] = []
        todo_slots: list[int] = []
        for i, (a, b) in enumerate(pairs):
            a_blank = a.strip() == ""
            b_blank = b.strip() == ""
            if a_blank or b_blank:
                out[i] = 1.0 if (a_blank and b_blank) else 0.0
                continue
            cached = self._cache.get((a, b))
            if cached is not None:
                out[i] = cached
                self.stats.cache_hits += 1
            else:
                todo.append((a, b))
                todo_slots.append(i)
        if todo:
            raw = self.scorer.score(todo)
            if len(raw) != len(todo):
                raise ValueError(
                    f"scorer {self.name!r} returned {len(raw)} scores for {len(todo)} pairs"
                )
            for slot, pair, value in zip(todo_slots, todo, raw):
                clamped = min(1.0, max(0.0, float(value)))
                if clamped != value:
                    self.stats.clamped += 1
                self._cache[pair] = clamped
                out[slot] = clamped
        self.stats.pairs_scored += len(pairs)
        assert all(v is not None for v in out)
        return out  # type: ignore[return-value]

    def score(self, a: str, b: str) -> float:
        return self.score_pairs([(a, b)])[0]


def similarity_matrix(
    engine: SimilarityEngine, rows: Sequence[str], cols: Sequence[str]
) -> np.ndarray:
    """matrix[i, j] = sim(rows[i], cols[j]), computed in one batched call."""
    if not rows or not cols:
        raise ValueError("similarity_matrix requires non-empty rows and cols")
    scores = engine.score_pairs([(a, b) for a in rows for b in cols])
    return np.asarray(scores, dtype=np.float64).reshape(len(rows), len(cols))


class ScorerTransportError(RuntimeError):
    """Transport or protocol failure while talking to an external scorer."""


_TCP_ADDRESS = re.compile(r"^(?:tcp:)?(?P<host>[\w.\-]+):(?P<port>\d+)$")


class SidecarScorer:
    """Client for an external scorer speaking newline-delimited JSON.

    Requests are `{"id": n, "pairs": [["a","b"], ...]}`; responses echo the
    id and carry `scores` plus a `scorer` identity string.  The address is
    either `host:port` (TCP, `tcp:` prefix optional) or a command line to
    spawn and talk to over stdio (`stdio:` prefix optional).
    """

    def __init__(self, address: str, *, timeout: float = 60.0, max_batch: int = 512):
        if not address:
            raise ValueError("sidecar address must be non-empty")
        self.address = address
        self.timeout = timeout
        self.max_batch = max_batch
        self._name: Optional[str] = None
        self._lock = threading.Lock()
        self._reader = None
        self._writer = None
        self._proc: Optional[subprocess.Popen] = None
        self._sock: Optional[socket.socket] = None
        self._next_id = 0

    @property
    def name(self) -> str:
        return self._name or f"sidecar({self.address})"

    def _connect(self) -> None:
        if self._reader is not None:
            return
        match = _TCP_ADDRESS.match(self.address)
        if match:
            self._sock = socket.create_connection(
                (match.group("host"), int(match.group("port"))), timeout=self.timeout
            )
            self._reader = self._sock.makefile("r", encoding="utf-8")
            self._writer = self._sock.makefile("w", encoding="utf-8")
        else:
            command = self.address[len("stdio:"):] if self.address.startswith("stdio:") else self.address
            self._proc = subprocess.Popen(
                shlex.split(command),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                encoding="utf-8",
            )
            self._reader = self._proc.stdout
            self._writer = self._proc.stdin

    def _roundtrip(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        request_id = self._next_id
        self._next_id += 1
        self._writer.write(json.dumps({"id": request_id, "pairs": [list(p) for p in pairs]}) + "\n")
        self._writer.flush()
        line = self._reader.readline()
        if not line:
            raise ScorerTransportError(f"scorer at {self.address!r} closed the connection")
        try:
            response = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ScorerTransportError(f"unparseable scorer response: {exc}") from None
        if response.get("error") is not None:
            raise ScorerTransportError(f"scorer error: {response['error']}")
        if response.get("id") != request_id:
            raise ScorerTransportError(
                f"scorer answered id {response.get('id')!r} to request {request_id}"
            )
        scores = response.get("scores")
        if not isinstance(scores, list) or len(scores) != len(pairs):
            raise ScorerTransportError(
                f"scorer returned {len(scores) if isinstance(scores, list) else 'no'} "
                f"scores for {len(pairs)} pairs"
            )
        if isinstance(response.get("scorer"), str):
            self._name = response["scorer"]
        return [float(s) for s in scores]

    def score(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        out: list[float] = []
        with self._lock:
            self._connect()
            for start in range(0, len(pairs), self.max_batch):
                out.extend(self._roundtrip(pairs[start : start + self.max_batch]))
        return out

    def close(self) -> None:
        with self._lock:
            for stream in (self._writer, self._reader):
                if stream is not None:
                    try:
                        stream.close()
                    except OSError:
                        pass
            if self._sock is not None:
                self._sock.close()
            if self._proc is not None:
                self._proc.wait(timeout=10)
            self._reader = self._writer = self._sock = self._proc = None

    def __enter__(self) -> "SidecarScorer":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


ScorerSpec = tuple  # ("builtin",) | ("sidecar", address)


def make_engine(scorer: Scorer | None = None) -> SimilarityEngine:
    return SimilarityEngine(scorer=scorer or TokenF1Scorer())


def engine_from_spec(spec: ScorerSpec) -> SimilarityEngine:
    """Build an engine from a picklable spec; used by worker processes."""
    if spec[0] == "builtin":
        return make_engine()
    if spec[0] == "sidecar":
        return make_engine(SidecarScorer(spec[1]))
    raise ValueError(f"unknown scorer spec {spec!r}")
