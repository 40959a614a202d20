"""Dataset and candidate ingestion, corpus scoring, and micro aggregation.

Datasets are newline-delimited JSON with one instance per line (field names
matched case-insensitively); candidates are newline-delimited JSON sets of
generated DOT strings per (id, language).  Aggregation sums TP/FP/FN as
exact rationals, so sharding and parallelism cannot change any reported
number.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import languages
from .dot_parser import validate_dot
from .metrics import METRIC_NAMES, PairScores, ScoreConfig, score_pair, valid_at_k
from .report import CorpusReport, LanguageBlock, MetricCell, sort_language_blocks
from .similarity import ScorerSpec, SimilarityEngine, engine_from_spec

log = logging.getLogger("dotscore.corpus")

_RECORD_FIELDS = (
    "id",
    "category",
    "diagram_number",
    "case_name",
    "case_number",
    "document_url",
    "year",
    "text",
    "graphviz",
    "language",
)


class CorpusError(Exception):
    """Malformed dataset/candidate data; message carries file line or
    instance identity."""


@dataclass(frozen=True)
class InstanceRecord:
    id: str
    category: str
    diagram_number: str
    case_name: str
    case_number: str
    document_url: str
    year: str
    text: str
    graphviz: str
    language: str


@dataclass(frozen=True)
class CandidateSet:
    id: str
    language: str
    candidates: tuple[str, ...]


@dataclass(frozen=True)
class RunConfig:
    k: int = 10
    metric_candidate: str = "top1"  # or "best-valid"
    parallelism: int = 1
    lenient_tail: bool = False
    deceased_as_entity: bool = False
    literal_sum: bool = False

    def __post_init__(self) -> None:
        if self.k < 1:
            raise CorpusError("k must be at least 1")
        if self.parallelism < 1:
            raise CorpusError("parallelism must be at least 1")
        if self.metric_candidate not in ("top1", "best-valid"):
            raise CorpusError(f"unknown metric_candidate {self.metric_candidate!r}")

    def score_config(self) -> ScoreConfig:
        return ScoreConfig(
            lenient_tail=self.lenient_tail,
            deceased_as_entity=self.deceased_as_entity,
            literal_sum=self.literal_sum,
        )


@dataclass(frozen=True)
class InstanceScore:
    id: str
    language: str
    scores: PairScores
    valid_at_1: bool
    valid_at_k: bool


@dataclass(frozen=True)
class DatasetStats:
    instances: int
    nodes: int
    relations: int
    per_language: dict[str, int]


def _iter_jsonl(path: str) -> Iterable[tuple[int, dict]]:
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: malformed JSON: {exc.msg}") from None
            if not isinstance(obj, dict):
                raise CorpusError(f"{path}:{lineno}: expected a JSON object")
            yield lineno, obj


def _lower_keys(obj: dict) -> dict:
    return {str(k).lower(): v for k, v in obj.items()}


def _text_field(obj: dict, key: str, default: str = "") -> str:
    value = obj.get(key, default)
    if value is None:
        return default
    return value if isinstance(value, str) else str(value)


def load_dataset(path: str, *, lenient_tail: bool = False) -> list[InstanceRecord]:
    """Load one split; reference DOT is validated eagerly since invalid
    references are corpus corruption, not model failure."""
    records: list[InstanceRecord] = []
    seen: set[tuple[str, str]] = set()
    for lineno, raw in _iter_jsonl(path):
        obj = _lower_keys(raw)
        record = InstanceRecord(**{f: _text_field(obj, f) for f in _RECORD_FIELDS})
        if not record.id:
            raise CorpusError(f"{path}:{lineno}: record has no ID")
        if not record.graphviz:
            raise CorpusError(f"{path}:{lineno}: record {record.id!r} has no Graphviz field")
        key = (record.id, record.language)
        if key in seen:
            raise CorpusError(f"{path}:{lineno}: duplicate instance {key!r}")
        seen.add(key)
        result = validate_dot(record.graphviz, lenient_tail=lenient_tail)
        if not result.valid:
            raise CorpusError(
                f"{path}:{lineno}: reference DOT of instance {record.id!r} "
                f"({record.language}) is invalid: {result.error}"
            )
        records.append(record)
    return records


def load_candidates(path: str) -> list[CandidateSet]:
    """Candidate DOT is deliberately not validated here: validity is a metric."""
    sets: list[CandidateSet] = []
    seen: set[tuple[str, str]] = set()
    for lineno, raw in _iter_jsonl(path):
        obj = _lower_keys(raw)
        cid = _text_field(obj, "id")
        language = _text_field(obj, "language")
        if not cid:
            raise CorpusError(f"{path}:{lineno}: candidate set has no ID")
        candidates = obj.get("candidates")
        if not isinstance(candidates, list) or not candidates:
            raise CorpusError(f"{path}:{lineno}: candidate set {cid!r} has no candidates")
        if not all(isinstance(c, str) for c in candidates):
            raise CorpusError(f"{path}:{lineno}: candidates of {cid!r} must be strings")
        key = (cid, language)
        if key in seen:
            raise CorpusError(f"{path}:{lineno}: duplicate candidate set {key!r}")
        seen.add(key)
        sets.append(CandidateSet(id=cid, language=language, candidates=tuple(candidates)))
    return sets


def dataset_stats(records: Sequence[InstanceRecord]) -> DatasetStats:
    """Instance/node/relation totals plus per-language instance counts."""
    from .metrics import normalize_source

    nodes = 0
    relations = 0
    per_language: dict[str, int] = {}
    for record in records:
        graph = normalize_source(record.graphviz)
        nodes += len(graph.nodes)
        relations += len(graph.edges)
        code = languages.canonical_code(record.language)
        per_language[code] = per_language.get(code, 0) + 1
    ordered = dict(sorted(per_language.items(), key=lambda kv: languages.sort_key(kv[0])))
    return DatasetStats(
        instances=len(records), nodes=nodes, relations=relations, per_language=ordered
    )


def pair_candidates(
    records: Sequence[InstanceRecord], candidate_sets: Sequence[CandidateSet]
) -> list[tuple[InstanceRecord, CandidateSet]]:
    by_key = {(r.id, r.language): r for r in records}
    pairs = []
    for cand in candidate_sets:
        record = by_key.get((cand.id, cand.language))
        if record is None:
            raise CorpusError(
                f"candidate set ({cand.id!r}, {cand.language!r}) has no matching "
                f"instance in the loaded dataset"
            )
        pairs.append((record, cand))
    return pairs


def pick_metric_candidate(cand: CandidateSet, config: RunConfig) -> str:
    """top1: first candidate.  best-valid: first valid candidate, falling
    back to the first candidate when none validates."""
    if config.metric_candidate == "top1":
        return cand.candidates[0]
    if config.metric_candidate == "best-valid":
        for c in cand.candidates:
            if validate_dot(c, lenient_tail=config.lenient_tail).valid:
                return c
        return cand.candidates[0]
    raise CorpusError(f"unknown metric_candidate {config.metric_candidate!r}")


def score_instance(
    record: InstanceRecord,
    cand: CandidateSet,
    engine: SimilarityEngine,
    config: RunConfig,
) -> InstanceScore:
    hyp = pick_metric_candidate(cand, config)
    scores = score_pair(record.graphviz, hyp, engine, config.score_config())
    return InstanceScore(
        id=record.id,
        language=record.language,
        scores=scores,
        valid_at_1=valid_at_k(cand.candidates, 1, lenient_tail=config.lenient_tail),
        valid_at_k=valid_at_k(cand.candidates, config.k, lenient_tail=config.lenient_tail),
    )


_WORKER_ENGINES: dict[ScorerSpec, SimilarityEngine] = {}


def _worker_engine(spec: ScorerSpec) -> SimilarityEngine:
    engine = _WORKER_ENGINES.get(spec)
    if engine is None:
        engine = engine_from_spec(spec)
        _WORKER_ENGINES[spec] = engine
    return engine


def _score_task(
    task: tuple[InstanceRecord, CandidateSet, ScorerSpec, RunConfig]
) -> tuple[InstanceScore, str]:
    record, cand, spec, config = task
    engine = _worker_engine(spec)
    return score_instance(record, cand, engine, config), engine.name


def run_scoring(
    records: Sequence[InstanceRecord],
    candidate_sets: Sequence[CandidateSet],
    scorer_spec: ScorerSpec,
    config: RunConfig,
) -> tuple[list[InstanceScore], str]:
    """Score every candidate set against its instance; returns the scores
    and the scorer identity.  parallelism > 1 fans out over a process pool
    without changing any emitted number."""
    pairs = pair_candidates(records, candidate_sets)
    results: list[InstanceScore] = []
    scorer_name = ""
    if config.parallelism <= 1:
        engine = _worker_engine(scorer_spec)
        for i, (record, cand) in enumerate(pairs, start=1):
            results.append(score_instance(record, cand, engine, config))
            if i % 200 == 0:
                log.info("scored %d/%d instances", i, len(pairs))
        scorer_name = engine.name
    else:
        tasks = [(record, cand, scorer_spec, config) for record, cand in pairs]
        with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
            chunk = max(1, len(tasks) // (config.parallelism * 4))
            for i, (score, name) in enumerate(pool.map(_score_task, tasks, chunksize=chunk), start=1):
                results.append(score)
                scorer_name = name
                if i % 200 == 0:
                    log.info("scored %d/%d instances", i, len(pairs))
    return results, scorer_name


_ZERO = Fraction(0)


class _MetricAccumulator:
    """Exact rational TP/FP/FN sums; float conversion happens only on emit,
    which is what makes shard-wise merging equal whole-corpus aggregation."""

    def __init__(self) -> None:
        self.tp = _ZERO
        self.fp = _ZERO
        self.fn = _ZERO

    def add(self, tp: float, fp: float, fn: float) -> None:
        self.tp += Fraction(tp)
        self.fp += Fraction(fp)
        self.fn += Fraction(fn)

    def cell(self) -> MetricCell:
        denom = 2 * self.tp + self.fp + self.fn
        f1 = 1.0 if denom == 0 else float(Fraction(2) * self.tp / denom)
        return MetricCell(tp=float(self.tp), fp=float(self.fp), fn=float(self.fn), f1=f1)


def _aggregate_block(
    code: str, name: str, scores: Sequence[InstanceScore]
) -> LanguageBlock:
    all_acc = {metric: _MetricAccumulator() for metric in METRIC_NAMES}
    valid_acc = {metric: _MetricAccumulator() for metric in METRIC_NAMES}
    n_valid_1 = 0
    n_valid_k = 0
    for score in scores:
        n_valid_1 += score.valid_at_1
        n_valid_k += score.valid_at_k
        by_name = score.scores.by_name()
        for metric, ms in by_name.items():
            all_acc[metric].add(ms.counts.tp, ms.counts.fp, ms.counts.fn)
            if score.scores.valid:
                valid_acc[metric].add(ms.counts.tp, ms.counts.fp, ms.counts.fn)
    n = len(scores)
    return LanguageBlock(
        code=code,
        name=name,
        instances=n,
        valid_at_1=float(Fraction(n_valid_1, n)) if n else 0.0,
        valid_at_k=float(Fraction(n_valid_k, n)) if n else 0.0,
        metrics={m: acc.cell() for m, acc in all_acc.items()},
        metrics_valid_only={m: acc.cell() for m, acc in valid_acc.items()},
    )


def aggregate(
    instance_scores: Sequence[InstanceScore],
    *,
    k: int,
    scorer: str,
    toolkit_version: str,
    config: Optional[RunConfig] = None,
) -> CorpusReport:
    """Micro aggregation: sum counts per language, then one F1 per metric;
    the overall block sums across all languages."""
    ordered = sorted(
        instance_scores,
        key=lambda s: (languages.sort_key(s.language), s.id),
    )
    groups: dict[str, list[InstanceScore]] = {}
    for score in ordered:
        groups.setdefault(languages.canonical_code(score.language), []).append(score)
    blocks = [
        _aggregate_block(code, languages.display_name(code), scores)
        for code, scores in groups.items()
    ]
    config_echo = asdict(config) if config is not None else {}
    config_echo.pop("k", None)
    config_echo.pop("parallelism", None)
    return CorpusReport(
        toolkit_version=toolkit_version,
        scorer=scorer,
        k=k,
        config=config_echo,
        overall=_aggregate_block("ALL", "Overall", ordered),
        languages=tuple(sort_language_blocks(blocks)),
    )


def run_corpus(
    records: Sequence[InstanceRecord],
    candidate_sets: Sequence[CandidateSet],
    scorer_spec: ScorerSpec,
    config: RunConfig,
    *,
    toolkit_version: str,
) -> CorpusReport:
    scores, scorer_name = run_scoring(records, candidate_sets, scorer_spec, config)
    return aggregate(
        scores,
        k=config.k,
        scorer=scorer_name,
        toolkit_version=toolkit_version,
        config=config,
    )
