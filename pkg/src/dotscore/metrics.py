"""Pairwise scoring: the three graph-overlap F1 metrics, the four
legal-content F1 metrics, and candidate validity.

Edge metrics count matched edge pairs (weighted by node/label similarities
for the stricter variants); content metrics count aligned same-kind node
pairs weighted by text similarity.  FP/FN are the unmatched remainders of
each side, so every F1 reduces to 2·tp / (hyp side + ref side).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .alignment import EdgeMatch, NodeAlignment, align_nodes, match_edges
from .dot_parser import DotParseError, parse_dot
from .legal_graph import LegalGraph, NodeKind, NormalizeError, from_ast
from .similarity import SimilarityEngine

METRIC_NAMES = (
    "graph",
    "graph_node",
    "graph_node_edge",
    "entity",
    "relations",
    "source",
    "statement",
)


@dataclass(frozen=True)
class Counts:
    tp: float
    fp: float
    fn: float


@dataclass(frozen=True)
class MetricScore:
    counts: Counts
    f1: float


@dataclass(frozen=True)
class PairScores:
    valid: bool
    graph: MetricScore
    graph_node: MetricScore
    graph_node_edge: MetricScore
    entity: MetricScore
    relations: MetricScore
    source: MetricScore
    statement: MetricScore

    def by_name(self) -> dict[str, MetricScore]:
        return {name: getattr(self, name) for name in METRIC_NAMES}


@dataclass(frozen=True)
class ScoreConfig:
    lenient_tail: bool = False
    deceased_as_entity: bool = False
    literal_sum: bool = False


class InvalidReference(Exception):
    """The reference side of a pair failed to parse or normalize."""


def f1_from_counts(counts: Counts) -> float:
    """F1 = 2·tp / (2·tp + fp + fn); both sides empty → 1.0."""
    denom = 2.0 * counts.tp + counts.fp + counts.fn
    if denom == 0.0:
        return 1.0
    return 2.0 * counts.tp / denom


def _side_metric(tp: float, hyp_total: int, ref_total: int) -> MetricScore:
    # f1 is computed against the side totals directly: same value as
    # f1_from_counts up to rounding, but exactly monotone in tp, which the
    # graph ≥ graph&node ≥ graph&node&edge guarantee relies on
    counts = Counts(tp=tp, fp=hyp_total - tp, fn=ref_total - tp)
    denom = float(hyp_total + ref_total)
    f1 = 1.0 if denom == 0.0 else 2.0 * tp / denom
    return MetricScore(counts, f1)


def _selected_pairs(em: EdgeMatch, literal: bool):
    return em.compatible if literal else em.pairs


def graph_f1(
    ref: LegalGraph, hyp: LegalGraph, em: EdgeMatch, *, literal: bool = False
) -> MetricScore:
    """Structural agreement: one point per matched edge pair."""
    tp = float(len(_selected_pairs(em, literal)))
    return _side_metric(tp, len(hyp.edges), len(ref.edges))


def _endpoint_products(
    hyp: LegalGraph, align: NodeAlignment, pairs: Iterable
) -> list[float]:
    sim_by_hyp_id = {p.hyp_id: p.similarity for p in align.pairs}
    out = []
    for pair in pairs:
        edge = hyp.edges[pair.hyp_index]
        out.append(sim_by_hyp_id[edge.src] * sim_by_hyp_id[edge.dst])
    return out


def graph_node_f1(
    ref: LegalGraph,
    hyp: LegalGraph,
    align: NodeAlignment,
    em: EdgeMatch,
    *,
    literal: bool = False,
) -> MetricScore:
    """Matched edges weighted by the product of endpoint-text similarities."""
    pairs = _selected_pairs(em, literal)
    tp = math.fsum(_endpoint_products(hyp, align, pairs))
    return _side_metric(tp, len(hyp.edges), len(ref.edges))


def graph_node_edge_f1(
    ref: LegalGraph,
    hyp: LegalGraph,
    align: NodeAlignment,
    em: EdgeMatch,
    *,
    literal: bool = False,
) -> MetricScore:
    """As graph_node_f1 with an extra label-similarity factor per pair."""
    pairs = _selected_pairs(em, literal)
    products = _endpoint_products(hyp, align, pairs)
    tp = math.fsum(p * pair.label_sim for p, pair in zip(products, pairs))
    return _side_metric(tp, len(hyp.edges), len(ref.edges))


def relations_f1(
    ref: LegalGraph, hyp: LegalGraph, em: EdgeMatch, *, literal: bool = False
) -> MetricScore:
    """Label-text agreement over matched edges."""
    tp = math.fsum(p.label_sim for p in _selected_pairs(em, literal))
    return _side_metric(tp, len(hyp.edges), len(ref.edges))


def legal_content_f1(
    ref: LegalGraph,
    hyp: LegalGraph,
    align: NodeAlignment,
    kind: NodeKind,
    *,
    deceased_as_entity: bool = False,
) -> MetricScore:
    """Similarity-weighted agreement over aligned nodes that hold the given
    kind on both sides; kind mismatches contribute no tp."""

    def eligible(k: NodeKind) -> bool:
        if k == kind:
            return True
        return deceased_as_entity and kind == NodeKind.ENTITY and k == NodeKind.DECEASED

    hyp_kinds = {n.id: n.kind for n in hyp.nodes}
    ref_kinds = {n.id: n.kind for n in ref.nodes}
    n_hyp = sum(1 for n in hyp.nodes if eligible(n.kind))
    n_ref = sum(1 for n in ref.nodes if eligible(n.kind))
    tp = math.fsum(
        p.similarity
        for p in align.pairs
        if eligible(hyp_kinds[p.hyp_id]) and eligible(ref_kinds[p.ref_id])
    )
    return _side_metric(tp, n_hyp, n_ref)


def valid_at_k(
    candidates: Sequence[str], k: int, *, lenient_tail: bool = False
) -> bool:
    """True iff any of the first k candidates validates; k is clamped to the
    candidate count (and to at least 1)."""
    from .dot_parser import validate_dot

    limit = max(1, min(k, len(candidates)))
    return any(
        validate_dot(c, lenient_tail=lenient_tail).valid for c in candidates[:limit]
    )


def normalize_source(source: str, *, lenient_tail: bool = False) -> LegalGraph:
    """parse + normalize in one step; raises DotParseError or NormalizeError."""
    return from_ast(parse_dot(source, lenient_tail=lenient_tail))


def invalid_scores(ref: LegalGraph, config: ScoreConfig = ScoreConfig()) -> PairScores:
    """Scores for an unparseable/unnormalizable hypothesis: nothing found,
    everything on the reference side missed."""

    def count_kind(kind: NodeKind, fold_deceased: bool) -> int:
        kinds = {kind}
        if fold_deceased:
            kinds.add(NodeKind.DECEASED)
        return sum(1 for n in ref.nodes if n.kind in kinds)

    edge_side = _side_metric(0.0, 0, len(ref.edges))
    return PairScores(
        valid=False,
        graph=edge_side,
        graph_node=edge_side,
        graph_node_edge=edge_side,
        entity=_side_metric(0.0, 0, count_kind(NodeKind.ENTITY, config.deceased_as_entity)),
        relations=edge_side,
        source=_side_metric(0.0, 0, count_kind(NodeKind.SOURCE, False)),
        statement=_side_metric(0.0, 0, count_kind(NodeKind.STATEMENT, False)),
    )


def score_graphs(
    ref: LegalGraph,
    hyp: LegalGraph,
    engine: SimilarityEngine,
    config: ScoreConfig = ScoreConfig(),
) -> PairScores:
    align = align_nodes(ref, hyp, engine)
    em = match_edges(ref, hyp, align, engine)
    literal = config.literal_sum
    return PairScores(
        valid=True,
        graph=graph_f1(ref, hyp, em, literal=literal),
        graph_node=graph_node_f1(ref, hyp, align, em, literal=literal),
        graph_node_edge=graph_node_edge_f1(ref, hyp, align, em, literal=literal),
        entity=legal_content_f1(
            ref, hyp, align, NodeKind.ENTITY, deceased_as_entity=config.deceased_as_entity
        ),
        relations=relations_f1(ref, hyp, em, literal=literal),
        source=legal_content_f1(ref, hyp, align, NodeKind.SOURCE),
        statement=legal_content_f1(ref, hyp, align, NodeKind.STATEMENT),
    )


def score_pair(
    ref_dot: str,
    hyp_dot: str,
    engine: SimilarityEngine,
    config: ScoreConfig = ScoreConfig(),
) -> PairScores:
    """Full pipeline for one (reference, hypothesis) DOT pair.

    An invalid hypothesis is scored, not raised; an invalid reference is a
    data error and raises InvalidReference.
    """
    try:
        ref = normalize_source(ref_dot, lenient_tail=config.lenient_tail)
    except (DotParseError, NormalizeError) as exc:
        raise InvalidReference(f"reference DOT is invalid: {exc}") from exc
    try:
        hyp = normalize_source(hyp_dot, lenient_tail=config.lenient_tail)
    except (DotParseError, NormalizeError):
        return invalid_scores(ref, config)
    return score_graphs(ref, hyp, engine, config)
